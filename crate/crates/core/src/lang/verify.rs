//! Check families run by `verify`. Each individual check carries its
//! parameters so a failure names a reproducible instance.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::{center_basis, Element, Monomial};
use crate::braid::{self, BraidWord};
use crate::error::{Error, Result};
use crate::rep::{build_rep, RepContext};
use crate::scalar::{Backend, ScalarContext, FLOAT_TOLERANCE};
use crate::state::{self, State};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Relations,
    Intertwiners,
    Unitarity,
    Ybe,
    Moves,
    States,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Relations,
        Suite::Intertwiners,
        Suite::Unitarity,
        Suite::Ybe,
        Suite::Moves,
        Suite::States,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Relations => "relations",
            Suite::Intertwiners => "intertwiners",
            Suite::Unitarity => "unitarity",
            Suite::Ybe => "ybe",
            Suite::Moves => "moves",
            Suite::States => "states",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A suite selection: one family or all of them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selection {
    One(Suite),
    All,
}

impl Selection {
    pub fn suites(self) -> Vec<Suite> {
        match self {
            Selection::One(s) => vec![s],
            Selection::All => Suite::ALL.to_vec(),
        }
    }
}

impl FromStr for Selection {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if s == "all" {
            return Ok(Selection::All);
        }
        Suite::ALL
            .iter()
            .find(|x| x.name() == s)
            .map(|x| Selection::One(*x))
            .ok_or_else(|| format!("unknown suite '{s}'"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Not applicable at this size (e.g. representation over budget).
    Skip,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub suite: Suite,
    pub check: &'static str,
    pub params: Vec<(&'static str, i64)>,
    pub status: Status,
    pub detail: Option<String>,
}

impl CheckOutcome {
    fn sort_key(&self) -> (Suite, &'static str, Vec<i64>) {
        (self.suite, self.check, self.params.iter().map(|p| p.1).collect())
    }

    pub fn params_text(&self) -> String {
        self.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(",")
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub dim: u32,
    pub n: usize,
    pub backend: Backend,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| c.status == Status::Fail).count()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("verify N={} n={} backend={}\n", self.dim, self.n, self.backend);
        for c in &self.checks {
            out.push_str(&format!("{}  {:<12} {}({})", c.status.label(), c.suite.name(), c.check, c.params_text()));
            if let Some(d) = &c.detail {
                out.push_str(&format!("  [{d}]"));
            }
            out.push('\n');
        }
        let count = |s: Status| self.checks.iter().filter(|c| c.status == s).count();
        out.push_str(&format!(
            "total {}: {} passed, {} failed, {} skipped\n",
            self.checks.len(),
            count(Status::Pass),
            count(Status::Fail),
            count(Status::Skip)
        ));
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let checks: Vec<serde_json::Value> = self
            .checks
            .iter()
            .map(|c| {
                let params: serde_json::Map<String, serde_json::Value> =
                    c.params.iter().map(|(k, v)| (k.to_string(), (*v).into())).collect();
                let mut obj = serde_json::json!({
                    "suite": c.suite.name(),
                    "check": c.check,
                    "params": params,
                    "status": c.status.label(),
                });
                if let Some(d) = &c.detail {
                    obj["detail"] = d.clone().into();
                }
                obj
            })
            .collect();
        serde_json::json!({
            "N": self.dim,
            "n": self.n,
            "backend": self.backend.to_string(),
            "passed": self.passed(),
            "checks": checks,
        })
    }
}

type CheckFn = Box<dyn Fn() -> Result<(Status, Option<String>)> + Send + Sync>;

struct Job {
    suite: Suite,
    check: &'static str,
    params: Vec<(&'static str, i64)>,
    run: CheckFn,
}

fn ok(b: bool) -> Result<(Status, Option<String>)> {
    Ok((if b { Status::Pass } else { Status::Fail }, None))
}

struct Planner {
    ctx: Arc<ScalarContext>,
    n: usize,
    backend: Backend,
    jobs: Vec<Job>,
}

impl Planner {
    fn push<F>(&mut self, suite: Suite, check: &'static str, params: Vec<(&'static str, i64)>, f: F)
    where
        F: Fn(&Arc<ScalarContext>, usize, Backend) -> Result<(Status, Option<String>)> + Send + Sync + 'static,
    {
        let (ctx, n, backend) = (self.ctx.clone(), self.n, self.backend);
        self.jobs.push(Job {
            suite,
            check,
            params,
            run: Box::new(move || f(&ctx, n, backend)),
        });
    }

    fn gens(&self) -> i64 {
        2 * self.n as i64
    }

    fn relations(&mut self) {
        let (g, d) = (self.gens(), self.ctx.dim() as i64);
        for i in 1..=g {
            for j in i + 1..=g {
                self.push(Suite::Relations, "commute", vec![("i", i), ("j", j)], move |ctx, n, be| {
                    let ci = Element::generator(ctx, n, i as usize, 1)?;
                    let cj = Element::generator(ctx, n, j as usize, 1)?;
                    ok((&ci * &cj).eq_with(&(&cj * &ci).scale(ctx.q()), be))
                });
            }
            self.push(Suite::Relations, "order", vec![("i", i)], move |ctx, n, be| {
                let ci = Element::generator(ctx, n, i as usize, 1)?;
                ok(ci.pow(d as u32).eq_with(&Element::identity(ctx, n), be))
            });
        }
        self.push(Suite::Relations, "center", vec![], |ctx, n, _| {
            let basis = center_basis(ctx.dim(), n)?;
            ok(basis == vec![Monomial::identity(2 * n)])
        });
    }

    fn intertwiners(&mut self) {
        let (g, d) = (self.gens(), self.ctx.dim() as i64);
        for k in 1..=g {
            for l in k + 1..=g {
                for a in 0..d {
                    for b in 0..d {
                        let p = vec![("k", k), ("l", l), ("a", a), ("b", b)];
                        self.push(Suite::Intertwiners, "master", p.clone(), move |ctx, n, be| {
                            ok(braid::check_master_intertwiner_with(ctx, n, k as usize, l as usize, a, b, be)?)
                        });
                        self.push(Suite::Intertwiners, "adjoint", p, move |ctx, n, be| {
                            ok(braid::check_adjoint_intertwiner_with(ctx, n, k as usize, l as usize, a, b, be)?)
                        });
                        for q in (1..k).chain(l + 1..=g) {
                            let p = vec![("k", k), ("l", l), ("a", a), ("b", b), ("p", q)];
                            self.push(Suite::Intertwiners, "neutral", p, move |ctx, n, be| {
                                let (k, l, q) = (k as usize, l as usize, q as usize);
                                ok(braid::check_neutral_commutation_with(ctx, n, k, l, a, b, q, be)?)
                            });
                        }
                    }
                }
            }
        }
    }

    fn unitarity(&mut self) {
        let g = self.gens();
        for k in 1..=g {
            for l in 1..=g {
                if k != l {
                    self.push(Suite::Unitarity, "unitary", vec![("k", k), ("l", l)], move |ctx, n, be| {
                        ok(braid::check_unitarity_with(ctx, n, k as usize, l as usize, be)?)
                    });
                }
            }
        }
    }

    fn ybe(&mut self) {
        let g = self.gens();
        for i in 1..=g {
            for j in i + 1..=g {
                for k in j + 1..=g {
                    self.push(Suite::Ybe, "yang-baxter", vec![("i", i), ("j", j), ("k", k)], move |ctx, n, be| {
                        let r = braid::check_yang_baxter_with(ctx, n, i as usize, j as usize, k as usize, be)?;
                        let route = match &r.route {
                            braid::CertificateRoute::ConstantTerm => "certificate=constant-term".to_string(),
                            braid::CertificateRoute::Shifted(m) => format!("certificate=shifted:{m}"),
                            braid::CertificateRoute::Unavailable => "certificate=unavailable".to_string(),
                        };
                        let status = if r.passed() && r.consistent() { Status::Pass } else { Status::Fail };
                        Ok((status, Some(route)))
                    });
                }
            }
        }
        // far-apart braids commute: (i,i+1) against (j,j+1) with j > i+1
        for i in 1..g {
            for j in i + 2..g {
                self.push(Suite::Ybe, "distant", vec![("i", i), ("j", j)], move |ctx, n, be| {
                    let (i, j) = (i as usize, j as usize);
                    ok(braid::check_distant_commutation_with(ctx, n, (i, i + 1), (j, j + 1), be)?)
                });
            }
        }
    }

    fn moves(&mut self) {
        let n = self.n as i64;
        for k in 1..=n {
            self.push(Suite::Moves, "twist", vec![("k", k)], move |ctx, n, be| {
                ok(state::check_twist_with(ctx, n, k as usize, be)?)
            });
            for l in k + 1..=n {
                self.push(Suite::Moves, "slide", vec![("k", k), ("l", l)], move |ctx, n, be| {
                    ok(state::check_slide_with(ctx, n, k as usize, l as usize, be)?)
                });
                self.push(Suite::Moves, "slip", vec![("k", k), ("l", l)], move |ctx, n, be| {
                    ok(state::check_slip_with(ctx, n, k as usize, l as usize, be)?)
                });
            }
        }
        if n >= 2 {
            self.push(Suite::Moves, "chain", vec![], |ctx, n, be| {
                ok(state::check_chain_identities_with(ctx, n, be)?.passed())
            });
        }
    }

    fn states(&mut self) {
        let n = self.n as i64;
        for k in 1..=n {
            self.push(Suite::States, "closed-form-chain", vec![("k", k)], move |ctx, n, be| {
                ok(state::check_closed_form_chain_with(ctx, n, k as usize, be)?)
            });
        }
        if n >= 2 {
            self.push(Suite::States, "nonlocal-entangler", vec![], |ctx, n, be| {
                ok(state::check_nonlocal_entangler_with(ctx, n, be)?)
            });
        }
        self.push(Suite::States, "rep-cross-validation", vec![], |ctx, n, _| rep_cross_validation(ctx, n));
    }
}

/// A state touching every basis ket with pairwise distinct phases.
pub fn probe_state(ctx: &Arc<ScalarContext>, n: usize) -> State {
    let terms = State::basis_labels(ctx.dim(), n)
        .into_iter()
        .enumerate()
        .map(|(code, a)| (a.into_iter().map(i64::from).collect(), ctx.root(code as i64 + 1)));
    State::from_terms(ctx, n, terms).expect("labels have length n")
}

fn rep_cross_validation(ctx: &Arc<ScalarContext>, n: usize) -> Result<(Status, Option<String>)> {
    let rep: RepContext = match build_rep(ctx.dim(), n) {
        Ok(r) => r,
        Err(e @ Error::DimensionBudget { .. }) => return Ok((Status::Skip, Some(e.to_string()))),
        Err(e) => return Err(e),
    };
    let probe = probe_state(ctx, n);
    let g = 2 * n;
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    for k in 1..=g {
        let ck = Element::generator(ctx, n, k, 1)?;
        let r = rep.cross_validate(&ck, &probe, FLOAT_TOLERANCE)?;
        worst = worst.max(r.max_deviation);
        if !r.passed {
            failures.push(format!("c{k}"));
        }
        for l in 1..=g {
            if k == l {
                continue;
            }
            let w = BraidWord::new(vec![(k, l)]);
            let r = rep.cross_validate_word(ctx, &w, &probe, FLOAT_TOLERANCE)?;
            worst = worst.max(r.max_deviation);
            if !r.passed {
                failures.push(format!("b{k},{l}"));
            }
        }
    }
    let detail = format!("max-deviation={worst:.1e}");
    if failures.is_empty() {
        Ok((Status::Pass, Some(detail)))
    } else {
        Ok((Status::Fail, Some(format!("{detail} failing={}", failures.join(";")))))
    }
}

/// Runs the selected families. Checks execute in parallel; the report is
/// sorted by (suite, check, parameters), so it does not depend on scheduling.
pub fn run_verify(dim: u32, n: usize, selection: Selection, backend: Backend) -> Result<VerifyReport> {
    if n == 0 {
        return Err(Error::InvalidQuditCount(0));
    }
    let ctx = ScalarContext::new(dim)?;
    let mut planner = Planner {
        ctx,
        n,
        backend,
        jobs: Vec::new(),
    };
    for suite in selection.suites() {
        match suite {
            Suite::Relations => planner.relations(),
            Suite::Intertwiners => planner.intertwiners(),
            Suite::Unitarity => planner.unitarity(),
            Suite::Ybe => planner.ybe(),
            Suite::Moves => planner.moves(),
            Suite::States => planner.states(),
        }
    }
    let mut checks: Vec<CheckOutcome> = planner
        .jobs
        .into_par_iter()
        .map(|job| {
            let (status, detail) = match (job.run)() {
                Ok(r) => r,
                Err(e) => (Status::Fail, Some(format!("error {}: {e}", e.kind()))),
            };
            CheckOutcome {
                suite: job.suite,
                check: job.check,
                params: job.params,
                status,
                detail,
            }
        })
        .collect();
    checks.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    Ok(VerifyReport { dim, n, backend, checks })
}
