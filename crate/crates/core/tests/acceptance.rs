use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use fedosov::chart::SymplecticChart;
use fedosov::fedosov::{FedosovData, OmegaTerm, StarEval, StarProduct};
use fedosov::scalar::{qf, Q};
use fedosov::verify::{self, example_curved_data, Suite, VerifyConfig, VerifyReport};
use fedosov::weyl::FormWeyl;
use fedosov::xpoly::XPoly;

const N: i32 = 6;
const SEED: u64 = 1;

fn flat_omega(order: i32) -> FedosovData {
    let omega = vec![OmegaTerm { hbar_power: 1, form: vec![((0, 1), XPoly::one(2))] }];
    FedosovData::new(SymplecticChart::flat(2), omega, order).unwrap()
}

fn run(suite: Suite, data: Option<&FedosovData>) -> VerifyReport {
    verify::run(suite, data, &VerifyConfig::new(2, N, SEED)).unwrap()
}

/// Failing check ids among those selected by `keep`, or a note if nothing was selected.
fn failures(reports: &[VerifyReport], keep: impl Fn(&str) -> bool) -> Vec<String> {
    let mut seen = 0;
    let mut out = Vec::new();
    for r in reports {
        for c in r.checks.iter().filter(|c| keep(&c.id)) {
            seen += 1;
            if !c.passed {
                out.push(format!("{}/{}: {}", r.suite, c.id, c.witness.clone().unwrap_or_default()));
            }
        }
    }
    if seen == 0 {
        out.push("no checks selected".into());
    }
    out
}

fn falling(n: u32, k: u32) -> i64 {
    (0..k).map(|i| (n - i) as i64).product()
}

fn binomial(n: u32, k: u32) -> i64 {
    falling(n, k) / falling(k, k)
}

/// exp((hbar/2)(d1 (x) d2 - d2 (x) d1)) applied to x^a (x) x^b, then multiplied out.
fn moyal(a: [u32; 2], b: [u32; 2], order: i32) -> BTreeMap<(i32, [u32; 2]), Q> {
    let mut out: BTreeMap<(i32, [u32; 2]), Q> = BTreeMap::new();
    for n in 0..=(a[0] + a[1]).min(b[0] + b[1]) {
        if 2 * n as i32 > order {
            break;
        }
        for k in 0..=n {
            let j = n - k;
            if k > a[0] || j > a[1] || j > b[0] || k > b[1] {
                continue;
            }
            let num = binomial(n, k) * falling(a[0], k) * falling(a[1], j) * falling(b[0], j) * falling(b[1], k);
            let sign = if j % 2 == 0 { 1 } else { -1 };
            let c = qf(sign * num, 2i64.pow(n) * falling(n, n));
            let x = [a[0] + b[0] - n, a[1] + b[1] - n];
            *out.entry((n as i32, x)).or_insert_with(|| qf(0, 1)) += c;
        }
    }
    out.retain(|_, c| *c != qf(0, 1));
    out
}

fn as_map(f: &FormWeyl) -> BTreeMap<(i32, [u32; 2]), Q> {
    f.terms.iter().map(|(k, c)| ((k.hbar, [k.x[0] as u32, k.x[1] as u32]), c.clone())).collect()
}

fn monomial(e: [u32; 2], order: i32) -> FormWeyl {
    let x = XPoly::monomial([e[0] as u8, e[1] as u8].into_iter().collect(), qf(1, 1));
    FormWeyl::from_xpoly(&x, order)
}

fn moyal_oracle() -> Vec<String> {
    let order = 8;
    let sp = StarProduct::new(FedosovData::flat(2, order)).unwrap();
    let monos: Vec<[u32; 2]> = (0..=4).flat_map(|d| (0..=d).map(move |i| [i, d - i])).collect();
    let mut out = Vec::new();
    for a in &monos {
        for b in &monos {
            if a[0] + a[1] + b[0] + b[1] > 4 {
                continue;
            }
            let got = as_map(&sp.star(&monomial(*a, order), &monomial(*b, order)).unwrap());
            if got != moyal(*a, *b, order) {
                out.push(format!("x^{a:?} * x^{b:?}"));
            }
        }
    }
    out
}

/// The flat chart with Omega = hbar dx1 dx2 and the curved example chart.
fn both(suite: Suite) -> Vec<VerifyReport> {
    vec![run(suite, Some(&flat_omega(N))), run(suite, Some(&example_curved_data(N)))]
}

struct Criterion {
    name: &'static str,
    budget: Duration,
    check: Box<dyn Fn() -> Vec<String>>,
}

fn criterion(name: &'static str, secs: u64, check: impl Fn() -> Vec<String> + 'static) -> Criterion {
    Criterion { name, budget: Duration::from_secs(secs), check: Box::new(check) }
}

fn main() {
    let all = |_: &str| true;
    let small = |id: &str| id.starts_with("small-complex");
    let criteria = vec![
        criterion("flat Moyal oracle", 30, moyal_oracle),
        criterion("Fedosov fixed point", 60, move || failures(&both(Suite::Dsquare), all)),
        criterion("star associativity", 60, move || failures(&both(Suite::Assoc), all)),
        criterion("homotopy identities", 30, move || failures(&both(Suite::Hodge), all)),
        criterion("cochain algebra", 120, move || failures(&[run(Suite::Cochain, None)], all)),
        criterion("beta morphism", 120, move || {
            failures(&[run(Suite::Beta, Some(&flat_omega(N)))], |id| id != "transfer-exactness")
        }),
        criterion("exactness witnesses", 60, move || {
            failures(&[run(Suite::Beta, Some(&flat_omega(N)))], |id| id == "transfer-exactness")
        }),
        criterion("small complex", 10, move || failures(&[run(Suite::Barkoszul, None)], small)),
        criterion("resolutions", 120, move || failures(&[run(Suite::Barkoszul, None)], move |id| !small(id))),
        criterion("chi homotopy", 300, move || failures(&[run(Suite::Chi, None)], all)),
        criterion("equivariance", 120, move || failures(&[run(Suite::Equivariance, None)], all)),
    ];
    let mut failed = Vec::new();
    for (i, c) in criteria.iter().enumerate() {
        let t = Instant::now();
        let mut problems = (c.check)();
        let elapsed = t.elapsed();
        if elapsed > c.budget {
            problems.push(format!("took {elapsed:.1?}, budget {:?}", c.budget));
        }
        let status = if problems.is_empty() { "PASS" } else { "FAIL" };
        println!("{status} {:>2} {} ({elapsed:.2?})", i + 1, c.name);
        for p in &problems {
            println!("     {p}");
        }
        if !problems.is_empty() {
            failed.push(i + 1);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
