//! Seeded invariant suites with machine-readable reports.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::chart::SymplecticChart;
use crate::cochain::Cochain;
use crate::error::{Error, Result};
use crate::fedosov::{solve_r, FedosovData, OmegaTerm, StarEval, StarProduct};
use crate::fwx::{embed_forms, tau_symbol, Fwx};
use crate::hh::*;
use crate::io;
use crate::multi::{self, Exps};
use crate::ops;
use crate::poisson::Poisson;
use crate::random::{Gen, WeylSpec};
use crate::scalar::{q, Q};
use crate::weyl::FormWeyl;
use crate::xpoly::XPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Hodge,
    Dsquare,
    Assoc,
    Cochain,
    Beta,
    Barkoszul,
    Chi,
    Equivariance,
    All,
}

impl Suite {
    pub const EACH: [Suite; 8] = [
        Suite::Hodge,
        Suite::Dsquare,
        Suite::Assoc,
        Suite::Cochain,
        Suite::Beta,
        Suite::Barkoszul,
        Suite::Chi,
        Suite::Equivariance,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Hodge => "hodge",
            Suite::Dsquare => "dsquare",
            Suite::Assoc => "assoc",
            Suite::Cochain => "cochain",
            Suite::Beta => "beta",
            Suite::Barkoszul => "barkoszul",
            Suite::Chi => "chi",
            Suite::Equivariance => "equivariance",
            Suite::All => "all",
        }
    }

    /// Suites that run on Fedosov data; the others only need (dim, theta, N).
    pub fn uses_data(self) -> bool {
        matches!(self, Suite::Hodge | Suite::Dsquare | Suite::Assoc | Suite::Beta | Suite::All)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub dim: usize,
    pub order: i32,
    /// Slot-order cap for cochains; defaults to the order for Fedosov suites and 2 for Weyl algebra suites.
    pub cap: Option<u32>,
    pub seed: u64,
}

impl VerifyConfig {
    pub fn new(dim: usize, order: i32, seed: u64) -> Self {
        Self { dim, order, cap: None, seed }
    }

    fn fwx_cap(&self) -> u32 {
        self.cap.unwrap_or(self.order.max(0) as u32)
    }

    fn hh_cap(&self) -> u32 {
        self.cap.unwrap_or(2)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub id: String,
    pub passed: bool,
    pub samples: usize,
    /// Set for failures: the sample index, its inputs and the nonzero residual.
    pub witness: Option<Value>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub config: VerifyConfig,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                json!({
                    "id": c.id,
                    "status": if c.passed { "pass" } else { "fail" },
                    "samples": c.samples,
                    "witness": c.witness.clone().unwrap_or(Value::Null),
                })
            })
            .collect();
        let c = &self.config;
        json!({
            "suite": self.suite,
            "checks": checks,
            "config": {
                "dim": c.dim,
                "order": c.order,
                "seed": c.seed,
                "caps": {"fedosov": c.fwx_cap(), "weyl": c.hh_cap()},
            },
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{status} {}/{} ({} samples)\n", self.suite, c.id, c.samples));
            if let Some(w) = &c.witness {
                out.push_str(&format!("  witness: {}\n", io::canonical_string(w)));
            }
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        out.push_str(&format!("{}: {passed}/{} checks passed\n", self.suite, self.checks.len()));
        out
    }
}

struct Checks {
    out: Vec<Check>,
}

impl Checks {
    fn new() -> Self {
        Self { out: Vec::new() }
    }

    /// Runs `samples` instances; `f` returns a witness on failure. Stops at the first failure.
    fn run(&mut self, id: &str, samples: usize, mut f: impl FnMut(usize) -> Result<Option<Value>>) {
        let mut witness = None;
        for i in 0..samples {
            let w = match f(i) {
                Ok(w) => w,
                Err(e) => Some(json!({ "error": e.to_string() })),
            };
            if let Some(w) = w {
                witness = Some(json!({ "sample": i, "detail": w }));
                break;
            }
        }
        self.out.push(Check { id: id.to_string(), passed: witness.is_none(), samples, witness });
    }

    fn single(&mut self, id: &str, f: impl FnOnce() -> Result<Option<Value>>) {
        let mut f = Some(f);
        self.run(id, 1, |_| (f.take().unwrap())());
    }
}

fn weyl_diff(input: &[&FormWeyl], lhs: &FormWeyl, rhs: &FormWeyl) -> Option<Value> {
    (lhs != rhs).then(|| {
        json!({
            "input": input.iter().map(|a| io::weyl_to_json(a)).collect::<Vec<_>>(),
            "residual": io::weyl_to_json(&lhs.sub(rhs)),
        })
    })
}

fn cochain_diff(input: &[&Cochain], lhs: &Cochain, rhs: &Cochain) -> Option<Value> {
    (lhs != rhs).then(|| {
        json!({
            "input": input.iter().map(|a| io::cochain_to_json(a)).collect::<Vec<_>>(),
            "residual": io::cochain_to_json(&lhs.sub(rhs)),
        })
    })
}

fn weyl_zero(input: &[&FormWeyl], v: &FormWeyl) -> Option<Value> {
    weyl_diff(input, v, &FormWeyl::zero(v.dim, v.order))
}

fn cochain_zero(input: &[&Cochain], v: &Cochain) -> Option<Value> {
    cochain_diff(input, v, &Cochain::zero(v.dim, v.order, v.cap, v.arity))
}

/// A polynomial chart on R^2 with degree-one Christoffel symbols and Omega = hbar dx^1 dx^2.
pub fn example_curved_data(order: i32) -> FedosovData {
    let chart = SymplecticChart::from_symmetric_tensor(2, &|a, b, c| {
        let mut idx = [a, b, c];
        idx.sort();
        match idx {
            [0, 0, 0] => XPoly::var(2, 1),
            [0, 0, 1] => XPoly::var(2, 0),
            [1, 1, 1] => XPoly::var(2, 0),
            _ => XPoly::zero(2),
        }
    })
    .expect("symmetric tensor gives a valid chart");
    let omega = vec![OmegaTerm { hbar_power: 1, form: vec![((0, 1), XPoly::one(2))] }];
    FedosovData::new(chart, omega, order).expect("example data is valid")
}

/// Runs a suite. Suites that use Fedosov data fall back to the flat chart of dimension `dim`.
pub fn run(suite: Suite, data: Option<&FedosovData>, cfg: &VerifyConfig) -> Result<VerifyReport> {
    if cfg.dim == 0 || cfg.dim % 2 == 1 {
        return Err(Error::OddDimension(cfg.dim));
    }
    if cfg.order < 2 {
        return Err(Error::Precondition("order must be at least 2".into()));
    }
    let mut cfg = cfg.clone();
    let data = match data {
        Some(d) => {
            d.validate()?;
            cfg.dim = d.dim();
            d.clone()
        }
        None => FedosovData::flat(cfg.dim, cfg.order),
    };
    let mut checks = Checks::new();
    let suites: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    for s in suites {
        let mut part = Checks::new();
        match s {
            Suite::Hodge => hodge(&mut part, &data.chart, &cfg),
            Suite::Dsquare => dsquare(&mut part, &data, &cfg),
            Suite::Assoc => assoc(&mut part, &data, &cfg)?,
            Suite::Cochain => cochain_algebra(&mut part, &cfg),
            Suite::Beta => beta(&mut part, &data, &cfg)?,
            Suite::Barkoszul => barkoszul(&mut part, &cfg),
            Suite::Chi => chi(&mut part, &cfg),
            Suite::Equivariance => equivariance(&mut part, &cfg)?,
            Suite::All => unreachable!(),
        }
        for mut c in part.out {
            if suite == Suite::All {
                c.id = format!("{s}/{}", c.id);
            }
            checks.out.push(c);
        }
    }
    Ok(VerifyReport { suite: suite.name().to_string(), checks: checks.out, config: cfg })
}

fn rng(cfg: &VerifyConfig, salt: u64) -> Gen {
    Gen::new(cfg.seed.wrapping_mul(1_000_003).wrapping_add(salt))
}

fn form_spec(dim: usize, order: i32) -> WeylSpec {
    WeylSpec { dim, order, terms: 4, max_hbar: 1, max_y: 3, max_x: 2, form_degrees: (0..=dim.min(2) as u32).collect() }
}

fn hodge(c: &mut Checks, chart: &SymplecticChart, cfg: &VerifyConfig) {
    let (n, big) = (cfg.order, cfg.order + 2);
    let mut g = rng(cfg, 1);
    let inputs: Vec<FormWeyl> = (0..50).map(|_| g.weyl(&form_spec(cfg.dim, big))).collect();
    c.run("hodge-identity", 50, |i| {
        let a = &inputs[i];
        let lhs = ops::delta(&ops::delta_inv(a)).add(&ops::delta_inv(&ops::delta(a))).add(&ops::sigma(a));
        Ok(weyl_diff(&[a], &lhs.with_order(n), &a.with_order(n)))
    });
    c.run("delta-squared", 50, |i| Ok(weyl_zero(&[&inputs[i]], &ops::delta(&ops::delta(&inputs[i])))));
    c.run("delta-inverse-squared", 50, |i| {
        Ok(weyl_zero(&[&inputs[i]], &ops::delta_inv(&ops::delta_inv(&inputs[i]))))
    });
    c.run("nabla-delta-anticommute", 50, |i| {
        let a = &inputs[i];
        let v = ops::nabla(chart, &ops::delta(a)).add(&ops::delta(&ops::nabla(chart, a)));
        Ok(weyl_zero(&[a], &v.with_order(n)))
    });
    let rr = ops::curvature_r(chart, big);
    c.run("nabla-squared-curvature", 50, |i| {
        let a = &inputs[i];
        let lhs = ops::nabla(chart, &ops::nabla(chart, a));
        let rhs = chart.poisson.hbar_commutator(&rr, a);
        Ok(weyl_diff(&[a], &lhs.with_order(n), &rhs.with_order(n)))
    });
}

fn at_order(data: &FedosovData, order: i32) -> FedosovData {
    FedosovData { order, ..data.clone() }
}

fn dsquare(c: &mut Checks, data: &FedosovData, cfg: &VerifyConfig) {
    let (n, big) = (cfg.order, cfg.order + 2);
    let d = at_order(data, big);
    let r = match solve_r(&d) {
        Ok(r) => r,
        Err(e) => {
            c.single("solve-r", || Err(e));
            return;
        }
    };
    c.single("curvature-class-residual", || {
        let class = ops::weyl_curvature_class(&d.chart, &r)?;
        Ok(weyl_diff(&[], &class.with_order(n), &d.omega_form().with_order(n)))
    });
    c.single("r-normalized", || Ok(weyl_zero(&[&r], &ops::delta_inv(&r))));
    let mut g = rng(cfg, 2);
    let spec = WeylSpec { form_degrees: vec![0, 1], ..form_spec(d.dim(), big) };
    c.run("fedosov-d-squared", 20, |_| {
        let a = g.weyl(&spec);
        let da = ops::fedosov_d(&d.chart, &r, &a)?;
        Ok(weyl_zero(&[&a], &ops::fedosov_d(&d.chart, &r, &da)?.with_order(n)))
    });
}

fn random_function(g: &mut Gen, dim: usize, order: i32) -> FormWeyl {
    random_poly(g, dim, order, 3)
}

fn random_poly(g: &mut Gen, dim: usize, order: i32, degree: u32) -> FormWeyl {
    let p = FormWeyl::from_xpoly(&g.xpoly(dim, degree, 3), order);
    let h = FormWeyl::from_xpoly(&g.xpoly(dim, 1, 1), order).shift_hbar(1);
    p.add(&h)
}

fn assoc(c: &mut Checks, data: &FedosovData, cfg: &VerifyConfig) -> Result<()> {
    let (n, big) = (cfg.order, cfg.order + 2);
    let sp = StarProduct::new(at_order(data, big))?;
    let mut g = rng(cfg, 3);
    c.run("associativity", 20, |_| {
        let (a, b, cc) = (random_function(&mut g, sp.dim(), big), random_function(&mut g, sp.dim(), big), random_function(&mut g, sp.dim(), big));
        let lhs = sp.star(&sp.star(&a, &b)?, &cc)?;
        let rhs = sp.star(&a, &sp.star(&b, &cc)?)?;
        Ok(weyl_diff(&[&a, &b, &cc], &lhs.with_order(n), &rhs.with_order(n)))
    });
    c.run("unit", 5, |_| {
        let a = random_function(&mut g, sp.dim(), big);
        let one = FormWeyl::one(sp.dim(), big);
        Ok(weyl_diff(&[&a], &sp.star(&one, &a)?.with_order(n), &a.with_order(n)))
    });
    Ok(())
}

fn sgn(k: i64) -> Q {
    q(if k.rem_euclid(2) == 0 { 1 } else { -1 })
}

fn cochain_algebra(c: &mut Checks, cfg: &VerifyConfig) {
    let (n, dim) = (cfg.order, cfg.dim);
    let p = Poisson::standard(dim);
    // d and the cup product never lower the weight; each bracket can, by at most the
    // slot order or y-degree of an input, so bracket checks get a guard of 4
    let (lo, hi) = (n, n + 4);
    let cut = |x: &Cochain| x.truncated(n, lo as u32);
    let mut g = rng(cfg, 4);
    let mut small = |arity: usize| g.cochain(&WeylSpec::fiber(dim, hi, 3, 2), arity, 2, hi as u32);
    // no two arity-0 inputs, where the bracket would land in degree -1
    let big: Vec<[Cochain; 3]> = (0..20)
        .map(|i| {
            let (a, x) = (i % 3, (i + 1) % 3);
            [small(a), small(1 + (i / 3) % 2), small(if a == 0 && x == 0 { 2 } else { x })]
        })
        .collect();
    let samples: Vec<[Cochain; 3]> = big.iter().map(|t| t.clone().map(|x| x.truncated(lo, lo as u32))).collect();
    c.run("hochschild-squared", 20, |i| {
        let a = &samples[i][0];
        Ok(cochain_zero(&[a], &a.hochschild_d(&p).hochschild_d(&p)))
    });
    c.run("hochschild-bracket-form", 20, |i| {
        let a = &big[i][0];
        Ok(cochain_diff(&[a], &cut(&a.hochschild_d(&p)), &cut(&a.hochschild_d_bracket(&p))))
    });
    c.run("cup-associative", 20, |i| {
        let [a, b, x] = &samples[i];
        Ok(cochain_diff(&[a, b, x], &a.cup(b, &p).cup(x, &p), &a.cup(&b.cup(x, &p), &p)))
    });
    c.run("cup-derivation", 20, |i| {
        let [a, b, _] = &samples[i];
        let lhs = a.cup(b, &p).hochschild_d(&p);
        let rhs = a.hochschild_d(&p).cup(b, &p).add(&a.cup(&b.hochschild_d(&p), &p).scale(&sgn(a.arity as i64)));
        Ok(cochain_diff(&[a, b], &lhs, &rhs))
    });
    c.run("bracket-derivation", 20, |i| {
        let [a, b, _] = &big[i];
        let lhs = a.gerstenhaber(b).hochschild_d(&p);
        let rhs = a
            .hochschild_d(&p)
            .gerstenhaber(b)
            .scale(&sgn(b.arity as i64 + 1))
            .add(&a.gerstenhaber(&b.hochschild_d(&p)));
        Ok(cochain_diff(&[a, b], &cut(&lhs), &cut(&rhs)))
    });
    c.run("bracket-jacobi", 20, |i| {
        let [a, b, x] = &big[i];
        let (ka, kb, kc) = (a.arity as i64 - 1, b.arity as i64 - 1, x.arity as i64 - 1);
        let total = a
            .gerstenhaber(&b.gerstenhaber(x))
            .scale(&sgn(ka * kc))
            .add(&b.gerstenhaber(&x.gerstenhaber(a)).scale(&sgn(kb * ka)))
            .add(&x.gerstenhaber(&a.gerstenhaber(b)).scale(&sgn(kc * kb)));
        Ok(cochain_zero(&[a, b, x], &cut(&total)))
    });
}

/// A y-free cochain c(x) d^beta_1 ... d^beta_k, which is delta-closed.
fn y_free_cochain(g: &mut Gen, dim: usize, order: i32, arity: usize, cap: u32) -> Cochain {
    let coeff = FormWeyl::from_xpoly(&g.xpoly(dim, 1, 2), order);
    let slots: Vec<Exps> = (0..arity)
        .map(|_| {
            let d = g.usize_in(1, 2.min(cap as usize)) as u32;
            g.exps(dim, d)
        })
        .collect();
    Cochain::with_slots(&coeff, &slots, cap)
}

fn beta(c: &mut Checks, data: &FedosovData, cfg: &VerifyConfig) -> Result<()> {
    let n = cfg.order;
    let dim = data.dim();
    let mut g = rng(cfg, 5);
    {
        let f = Fwx::new(at_order(data, n + 2), cfg.fwx_cap())?;
        let mu = Cochain::mu0(&f.chart().poisson, n + 2, f.cap);
        c.run("mu-of-circ-is-star", 10, |_| {
            let (a, b) = (random_poly(&mut g, dim, n + 2, 2), random_poly(&mut g, dim, n + 2, 2));
            let lhs = f.beta(&mu).star(&a, &b)?;
            Ok(weyl_diff(&[&a, &b], &lhs.with_order(n), &f.star.star(&a, &b)?.with_order(n)))
        });
        c.run("transfer-exactness", 10, |i| {
            let spec = WeylSpec { terms: 2, max_hbar: 1, max_y: 2, max_x: 1, form_degrees: vec![(i % 2) as u32], ..form_spec(dim, n + 2) };
            let q0 = g.cochain(&spec, 1, 1, f.cap);
            let p = f.extend_d(&q0);
            let q = f.transfer_exactness(&p)?;
            let cut = |x: &Cochain| x.truncated(n, f.cap);
            Ok(cochain_diff(&[&p], &cut(&f.extend_d(&q)), &cut(&p)))
        });
    }
    // slot derivatives of alpha(P) lower the weight, hence the wider guard
    let big = n + 4;
    let f = Fwx::new(at_order(data, big), cfg.fwx_cap())?;
    let random_function = |g: &mut Gen, dim, order| random_poly(g, dim, order, 2);
    let mut closed = Vec::new();
    for _ in 0..10 {
        let p0 = y_free_cochain(&mut g, dim, big, 1, f.cap);
        closed.push(f.alpha(&p0)?);
    }
    c.run("alpha-is-closed", 10, |i| Ok(cochain_zero(&[&closed[i]], &f.extend_d(&closed[i]).truncated(n, f.cap))));
    c.run("beta-of-cup", 10, |i| {
        let (p1, p2) = (&closed[i], &closed[(i + 1) % 10]);
        let (a, b) = (random_function(&mut g, dim, big), random_function(&mut g, dim, big));
        let cup = p1.cup(p2, &f.chart().poisson);
        let lhs = f.beta(&cup).eval(&[a.clone(), b.clone()])?;
        let rhs = f.star.star(&f.beta(p1).eval(std::slice::from_ref(&a))?, &f.beta(p2).eval(std::slice::from_ref(&b))?)?;
        Ok(weyl_diff(&[&a, &b], &lhs.with_order(n), &rhs.with_order(n)))
    });
    c.run("tau-of-beta", 10, |i| {
        let p = &closed[i];
        let a = random_function(&mut g, dim, big);
        let lhs = f.star.tau(&f.beta(p).eval(std::slice::from_ref(&a))?)?;
        let rhs = p.eval(&[f.star.tau(&a)?]);
        Ok(weyl_diff(&[&a], &lhs.with_order(n), &rhs.with_order(n)))
    });
    let flat = StarProduct::new(FedosovData::flat(dim, n))?;
    c.run("tau-leading-symbol", 1, |_| {
        for alpha in multi::up_to_degree(dim, 2) {
            let k = multi::degree(&alpha);
            let sym = tau_symbol(&flat, &alpha, k + 1)?;
            for (beta, coeff) in &sym {
                let expect = if *beta == alpha { FormWeyl::one(dim, n) } else { FormWeyl::zero(dim, n) };
                if multi::degree(beta) >= k && *coeff != expect {
                    return Ok(Some(json!({
                        "alpha": alpha.to_vec(),
                        "beta": beta.to_vec(),
                        "coefficient": io::weyl_to_json(coeff),
                    })));
                }
            }
            if !sym.contains_key(&alpha) {
                return Ok(Some(json!({ "alpha": alpha.to_vec(), "missing": true })));
            }
        }
        Ok(None)
    });
    Ok(())
}

fn barkoszul(c: &mut Checks, cfg: &VerifyConfig) {
    let dim = cfg.dim;
    let w = WeylAlgebra::standard(dim);
    let big = 6 * cfg.order + 4;
    let mut g = rng(cfg, 6);
    let bar_json = |b: &BarChain| io::bar_to_json(b);
    let kos_json = |k: &KoszulChain| io::koszul_to_json(k);
    let bar_check = |b: &BarChain, lhs: &BarChain, rhs: &BarChain| {
        (lhs != rhs).then(|| json!({ "input": bar_json(b), "residual": bar_json(&lhs.sub(rhs)) }))
    };
    let kos_check = |k: &KoszulChain, lhs: &KoszulChain, rhs: &KoszulChain| {
        (lhs != rhs).then(|| json!({ "input": kos_json(k), "residual": kos_json(&lhs.sub(rhs)) }))
    };
    let kmax = dim.min(3);
    c.run("bar-d-squared", 10, |i| {
        let b = g.bar(dim, 2 + i % 2, big, 2, 4);
        let dd = bar_d(&w, &bar_d(&w, &b)?)?;
        Ok(bar_check(&b, &dd, &BarChain::zero(dim, dd.m, big)))
    });
    c.run("koszul-d-squared", 10, |i| {
        let k = g.koszul(dim, 2 + i % (kmax - 1), big, 2, 4);
        let dd = koszul_d(&w, &koszul_d(&w, &k)?)?;
        Ok(kos_check(&k, &dd, &KoszulChain::zero(dim, dd.m, big)))
    });
    c.run("bar-contracting", 10, |i| {
        let m = i % 4;
        let b = g.bar(dim, m, big, 2, 4);
        let lhs = if m == 0 {
            bar_d(&w, &bar_h(&b))?.add(&bar_unit(&bar_augment(&w, &b)))
        } else {
            bar_d(&w, &bar_h(&b))?.add(&bar_h(&bar_d(&w, &b)?))
        };
        Ok(bar_check(&b, &lhs, &b))
    });
    c.run("koszul-contracting", 10, |i| {
        let m = i % (kmax + 1);
        let k = g.koszul(dim, m, big, 3, 4);
        let lhs = if m == 0 {
            koszul_d(&w, &koszul_h(&w, &k))?.add(&koszul_section(&koszul_augment(&w, &k)))
        } else {
            koszul_d(&w, &koszul_h(&w, &k))?.add(&koszul_h(&w, &koszul_d(&w, &k)?))
        };
        Ok(kos_check(&k, &lhs, &k))
    });
    c.run("lambda-chain-map", 10, |i| {
        let k = g.koszul(dim, 1 + i % dim.min(2), big, 2, 4);
        let lhs = bar_d(&w, &koszul_to_bar(&w, &k))?;
        let rhs = koszul_to_bar(&w, &koszul_d(&w, &k)?);
        Ok((lhs != rhs).then(|| json!({ "input": kos_json(&k), "residual": bar_json(&lhs.sub(&rhs)) })))
    });
    c.run("nu-chain-map", 10, |i| {
        let b = g.bar(dim, 1 + i % 3, big, 2, 3);
        let lhs = koszul_d(&w, &bar_to_koszul(&w, &b))?;
        let rhs = bar_to_koszul(&w, &bar_d(&w, &b)?);
        Ok((lhs != rhs).then(|| json!({ "input": bar_json(&b), "residual": kos_json(&lhs.sub(&rhs)) })))
    });
    c.run("nu-lambda-identity", 10, |i| {
        let k = g.koszul(dim, i % (kmax + 1), big, 2, 4);
        Ok(kos_check(&k, &bar_to_koszul(&w, &koszul_to_bar(&w, &k)), &k))
    });
    c.run("rho-homotopy", 10, |i| {
        let b = g.bar(dim, 1 + i % 3, big, 2, 3);
        let mut cmp = Comparison::new(&w, big);
        let n = cmp.nu(&b);
        let ln = cmp.lambda(&n);
        let rb = cmp.rho(&b);
        let rdb = cmp.rho(&bar_d(&w, &b)?);
        Ok(bar_check(&b, &b.sub(&ln), &bar_d(&w, &rb)?.add(&rdb)))
    });
    let (n, m) = (cfg.order, cfg.hh_cap());
    c.run("rho-hat-homotopy", 10, |i| {
        let qa = 1 + i % 2;
        let work = n + 2 * (qa as u32 * m) as i32 + 2;
        let cap = qa as u32 * m;
        let a = g.cochain(&WeylSpec::fiber(dim, n, 3, 3), qa, m, cap + m).truncated(work, cap + m);
        let da = a.hochschild_d(&w.poisson);
        let lnl = nu_hat(&w, &lambda_hat(&w, &a, n), qa, n, m);
        let dr = rho_hat(&w, &a, n, cap)?.hochschild_d(&w.poisson).truncated(n, m);
        let rd = rho_hat(&w, &da, n, m)?;
        Ok(cochain_diff(&[&a], &a.truncated(n, m).sub(&lnl), &dr.add(&rd)))
    });
    let psi_json = |a: &PsiElement| io::psi_to_json(a);
    c.run("small-complex-homotopy", 50, |_| {
        let a = g.psi(dim, big, 3, 5);
        let rhs = a.constant_part().add(&small_d(&w, &small_h(&w, &a))).add(&small_h(&w, &small_d(&w, &a)));
        let dd = small_d(&w, &small_d(&w, &a));
        Ok((rhs != a || !dd.is_zero()).then(|| json!({ "input": psi_json(&a), "residual": psi_json(&rhs.sub(&a)) })))
    });
    c.single("small-complex-worked-example", || {
        let z = multi::zeros(dim);
        let psi1 = PsiElement::monomial(dim, big, 0, z.clone(), crate::exterior::single(0), q(1));
        let y2h = PsiElement::monomial(dim, big, -1, multi::unit(dim, 1), 0, q(1));
        let ok = small_h(&w, &psi1) == y2h && small_d(&w, &y2h) == psi1;
        Ok((!ok).then(|| json!({ "h(psi1)": psi_json(&small_h(&w, &psi1)), "d(y2/hbar)": psi_json(&small_d(&w, &y2h)) })))
    });
}

fn chi(c: &mut Checks, cfg: &VerifyConfig) {
    let (n, m, dim) = (cfg.order, cfg.hh_cap(), cfg.dim);
    let w = WeylAlgebra::standard(dim);
    let mut g = rng(cfg, 7);
    c.run("chi-homotopy", 10, |i| {
        let qa = 1 + i % 2;
        let work = n + 2 * (qa as u32 * m) as i32 + 2;
        let cap = qa as u32 * m;
        let a = g.cochain(&WeylSpec::fiber(dim, n, 3, 3), qa, m, cap + m).truncated(work, cap + m);
        let chi_a = cochain_homotopy_chi(&w, &a, n, cap)?;
        let chi_da = cochain_homotopy_chi(&w, &a.hochschild_d(&w.poisson), n, m)?;
        let lhs = chi_a.hochschild_d(&w.poisson).truncated(n, m).add(&chi_da);
        Ok(cochain_diff(&[&a], &lhs, &a.truncated(n, m)))
    });
    c.run("exactness-witness", 10, |_| {
        let b = g.weyl(&WeylSpec::fiber(dim, n + 4, 3, 3));
        let a = Cochain::from_weyl(&b, 2 * m).hochschild_d(&w.poisson);
        match hh_reduce(&w, &a, n, m)? {
            HhClass::Exact(x) => Ok(cochain_diff(&[&a], &x.hochschild_d(&w.poisson).truncated(n, m), &a.truncated(n, m))),
            HhClass::Central(_) => Ok(Some(json!({ "input": io::cochain_to_json(&a), "expected": "exact" }))),
        }
    });
    let basis = zero_cocycle_basis(&w, n);
    c.run("zero-cocycles-central", 10, |_| {
        let mut a = FormWeyl::zero(dim, n);
        for b in &basis {
            a = a.add(&b.scale(&g.rational()));
        }
        let p = Cochain::from_weyl(&a, m);
        let central = matches!(hh_reduce(&w, &p, n, m)?, HhClass::Central(_));
        Ok((!a.is_y_free() || !central).then(|| json!({ "cocycle": io::weyl_to_json(&a) })))
    });
}

/// A random element of Sp(dim, Q) for the standard form: block-diagonal SL(2, Q) factors.
fn symplectic(g: &mut Gen, dim: usize) -> Vec<Vec<Q>> {
    let mut out = crate::scalar::identity(dim);
    let zero = Q::from_integer(0.into());
    for blk in 0..dim / 2 {
        let (a, b, c) = (g.rational(), if g.usize_in(0, 1) == 1 { g.rational() } else { zero.clone() }, g.rational());
        let d = (Q::from_integer(1.into()) + &b * &c) / &a;
        let i = 2 * blk;
        out[i][i] = a;
        out[i][i + 1] = b;
        out[i + 1][i] = c;
        out[i + 1][i + 1] = d;
    }
    out
}

fn equivariance(c: &mut Checks, cfg: &VerifyConfig) -> Result<()> {
    let (n, m, dim) = (cfg.order, cfg.hh_cap(), cfg.dim);
    let w = WeylAlgebra::standard(dim);
    let mut g = rng(cfg, 8);
    c.run("chi-transport", 5, |_| {
        let t = g.invertible(dim);
        let w2 = WeylAlgebra::new(transport_theta(&t, &w.theta))?;
        let a = g.cochain(&WeylSpec::fiber(dim, n + 2 * m as i32 + 2, 3, 3), 1, m, 2 * m);
        let lhs = transport_cochain(&t, &cochain_homotopy_chi(&w, &a, n, m)?)?;
        let rhs = cochain_homotopy_chi(&w2, &transport_cochain(&t, &a)?, n, m)?;
        Ok(cochain_diff(&[&a], &lhs, &rhs))
    });
    c.run("product-transport", 5, |_| {
        let t = g.invertible(dim);
        let w2 = WeylAlgebra::new(transport_theta(&t, &w.theta))?;
        let spec = WeylSpec::fiber(dim, n, 3, 3);
        let (a, b) = (g.weyl(&spec), g.weyl(&spec));
        let lhs = transport_weyl(&t, &w.poisson.product(&a, &b))?;
        let rhs = w2.poisson.product(&transport_weyl(&t, &a)?, &transport_weyl(&t, &b)?);
        Ok(weyl_diff(&[&a, &b], &lhs, &rhs))
    });
    let big = n + 2;
    let f = Fwx::new(FedosovData::flat(dim, big), n as u32)?;
    c.run("star-transport", 5, |_| {
        let t = symplectic(&mut g, dim);
        let (a, b) = (random_function(&mut g, dim, big), random_function(&mut g, dim, big));
        let lhs = transport_weyl(&t, &f.star.star(&a, &b)?)?;
        let rhs = f.star.star(&transport_weyl(&t, &a)?, &transport_weyl(&t, &b)?)?;
        Ok(weyl_diff(&[&a, &b], &lhs.with_order(n), &rhs.with_order(n)))
    });
    c.run("alpha-transport", 5, |_| {
        let t = symplectic(&mut g, dim);
        let p = y_free_cochain(&mut g, dim, big, 1, f.cap);
        let lhs = transport_cochain(&t, &f.alpha(&p)?)?;
        let rhs = f.alpha(&transport_cochain(&t, &p)?)?;
        Ok(cochain_diff(&[&p], &lhs.truncated(n, f.cap), &rhs.truncated(n, f.cap)))
    });
    c.run("embed-transport", 5, |_| {
        let t = symplectic(&mut g, dim);
        let u = FormWeyl::from_xpoly(&g.xpoly(dim, 2, 2), big).wedge_dx_left(g.usize_in(0, dim - 1));
        let lhs = transport_cochain(&t, &embed_forms(&u, f.cap)?)?;
        let rhs = embed_forms(&transport_weyl(&t, &u)?, f.cap)?;
        Ok(cochain_diff(&[], &lhs, &rhs))
    });
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH.into_iter().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn hodge_suite_passes() {
        let r = run(Suite::Hodge, None, &VerifyConfig::new(2, 6, 1)).unwrap();
        assert!(r.passed(), "{}", r.to_text());
    }
}
