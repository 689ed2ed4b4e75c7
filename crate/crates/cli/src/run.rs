//! Task orchestration and report assembly.

use std::f64::consts::{FRAC_PI_2, PI};

use dbk_core::extensions::verify_generating;
use dbk_core::spectra::beta_grid;
use dbk_core::zerofree::{clustered_betas, gauge_identities, window_grid};
use dbk_core::{
    canonical_product, catalog, check_lemma_inner, check_lemma_orthogonality, from_jacobi, from_zero_data, gauge_check,
    oracle_eigensystem, theorem43_consistency, uniqueness_check, verify_rank_one, zero_free_membership, DbError,
    DbSpace, Dimension, EntireFunction, Numerics, Provenance, SampledFunction, Verdict, C,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::json::{format_float, Json};
use crate::schema::{Angle, BetaGrid, Document, ModelSpec, Task};

const DEFAULT_GRID: usize = 25;
const GRID_MARGIN: f64 = 0.01;

/// A finished run: the report plus any CSV tables and failure summaries.
#[derive(Debug)]
pub struct Outcome {
    pub report: Json,
    pub tables: Vec<(String, String)>,
    /// One line per failing task with its worst residual.
    pub failures: Vec<String>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn build_space(doc: &Document) -> Result<DbSpace, DbError> {
    let space = match &doc.model {
        ModelSpec::Name(name) => catalog(name)?,
        ModelSpec::Jacobi { jacobi } => from_jacobi("jacobi", jacobi.clone())?,
        ModelSpec::ZeroData { zerodata } => from_zero_data("zerodata", zerodata.clone())?,
    };
    let spec = &doc.numerics;
    if spec.window.is_none() && spec.truncation.is_none() && spec.tol.is_none() {
        return Ok(space);
    }
    let mut numerics: Numerics = space.numerics().clone();
    if let Some([lo, hi]) = spec.window {
        numerics.window = (lo, hi);
    }
    if let Some(t) = spec.truncation {
        numerics.truncation = t;
    }
    if let Some(tol) = spec.tol {
        numerics.tol = tol;
    }
    space.with_numerics(numerics)
}

/// Angles of the document grid.
pub fn document_betas(doc: &Document) -> Vec<f64> {
    match &doc.numerics.beta_grid {
        None => beta_grid(DEFAULT_GRID, GRID_MARGIN, PI - GRID_MARGIN),
        Some(BetaGrid::Count(n)) => beta_grid(*n, GRID_MARGIN, PI - GRID_MARGIN),
        Some(BetaGrid::List(list)) => list.iter().map(|a| a.value).collect(),
    }
}

/// Per-task seed derived from the run seed and the task position.
fn task_rng(seed: u64, index: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15u64.wrapping_mul(index as u64 + 1))
}

struct Comparison {
    quantity: &'static str,
    primary: &'static str,
    reference: &'static str,
    deviation: f64,
    tolerance: f64,
}

impl Comparison {
    fn pass(&self) -> bool {
        self.deviation <= self.tolerance
    }

    fn to_json(&self) -> Json {
        Json::object()
            .with("quantity", self.quantity)
            .with("primary", self.primary)
            .with("reference", self.reference)
            .with("deviation", self.deviation)
            .with("tolerance", self.tolerance)
            .with("pass", self.pass())
    }
}

struct TaskResult {
    results: Json,
    comparisons: Vec<Comparison>,
    /// Extra pass conditions beyond the comparisons.
    checks: Vec<(&'static str, bool)>,
    table: Option<(String, String)>,
}

impl TaskResult {
    fn new() -> Self {
        TaskResult { results: Json::object(), comparisons: Vec::new(), checks: Vec::new(), table: None }
    }

    fn pass(&self) -> bool {
        self.comparisons.iter().all(Comparison::pass) && self.checks.iter().all(|(_, ok)| *ok)
    }

    fn worst(&self) -> String {
        if let Some(c) = self.comparisons.iter().find(|c| !c.pass()) {
            return format!(
                "{}: deviation {} exceeds tolerance {}",
                c.quantity,
                format_float(c.deviation),
                format_float(c.tolerance)
            );
        }
        match self.checks.iter().find(|(_, ok)| !*ok) {
            Some((name, _)) => format!("check failed: {name}"),
            None => String::new(),
        }
    }
}

fn angle_json(a: &Angle) -> Json {
    Json::object().with("radians", a.value).with("expr", a.to_string())
}

fn angles_json(values: &[f64]) -> Json {
    Json::floats(values)
}

fn model_json(space: &DbSpace) -> Json {
    let (kind, size) = match space.dim() {
        Dimension::Finite(n) => ("finite", n),
        Dimension::Truncated(n) => ("truncated", n),
    };
    Json::object()
        .with("name", space.name())
        .with("provenance", space.provenance().tag())
        .with("dimension", Json::object().with("kind", kind).with("size", size))
        .with("s0", space.s0().to_string())
        .with("s_half", space.s_half().to_string())
}

fn numerics_json(space: &DbSpace, betas: &[f64], seed: u64) -> Json {
    let n = space.numerics();
    Json::object()
        .with("window", Json::floats(&[n.window.0, n.window.1]))
        .with("truncation", n.truncation)
        .with("tol", n.tol)
        .with("beta_grid", angles_json(betas))
        .with("seed", seed)
}

/// Runs every task of `doc` in order against a model built from it.
pub fn run(doc: &Document, space: &DbSpace, seed: u64) -> Outcome {
    let betas = document_betas(doc);
    let mut tasks = Vec::with_capacity(doc.tasks.len());
    let mut tables = Vec::new();
    let mut failures = Vec::new();
    let mut passed = 0usize;
    for (index, task) in doc.tasks.iter().enumerate() {
        let mut entry = Json::object().with("task", task.name()).with("inputs", inputs_json(task, &betas));
        match execute(space, task, index, &betas, seed) {
            Ok(result) => {
                let pass = result.pass();
                entry.push("pass", pass);
                entry.push("comparisons", Json::Array(result.comparisons.iter().map(Comparison::to_json).collect()));
                entry.push(
                    "checks",
                    Json::Object(result.checks.iter().map(|(k, v)| (k.to_string(), Json::Bool(*v))).collect()),
                );
                entry.push("results", result.results.clone());
                if pass {
                    passed += 1;
                } else {
                    failures.push(format!("task {index} ({}): {}", task.name(), result.worst()));
                }
                if let Some(t) = result.table {
                    tables.push(t);
                }
            }
            Err(e) => {
                entry.push("pass", false);
                entry.push("error", Json::object().with("code", e.code()).with("message", e.to_string()));
                failures.push(format!("task {index} ({}): {e}", task.name()));
            }
        }
        tasks.push(entry);
    }
    let report = Json::object()
        .with("tool", "dbk")
        .with("version", env!("CARGO_PKG_VERSION"))
        .with("model", model_json(space))
        .with("numerics", numerics_json(space, &betas, seed))
        .with("tasks", Json::Array(tasks))
        .with(
            "summary",
            Json::object()
                .with("tasks", doc.tasks.len())
                .with("passed", passed)
                .with("failed", doc.tasks.len() - passed),
        );
    Outcome { report, tables, failures }
}

fn list_or(list: &Option<Vec<Angle>>, default: impl FnOnce() -> Vec<f64>) -> Vec<f64> {
    list.as_ref().map_or_else(default, |l| l.iter().map(|a| a.value).collect())
}

fn angle_list_json(list: &Option<Vec<Angle>>, default: impl FnOnce() -> Vec<f64>) -> Json {
    match list {
        Some(l) => Json::Array(l.iter().map(angle_json).collect()),
        None => angles_json(&default()),
    }
}

fn inputs_json(task: &Task, betas: &[f64]) -> Json {
    match task {
        Task::Spectrum { beta } | Task::ZeroFree { beta } => Json::object().with("beta", angle_json(beta)),
        Task::VerifyRankOne { betas: list, n } => {
            Json::object().with("betas", angle_list_json(list, || betas.to_vec())).with("n", *n)
        }
        Task::VerifyGenerating { betas: list } => {
            Json::object().with("betas", angle_list_json(list, || betas.to_vec()))
        }
        Task::VerifyLemmas { draws } => Json::object().with("draws", *draws),
        Task::Theorem43 { betas: list, j0 } => Json::object()
            .with("betas", angle_list_json(list, || clustered_betas(5)))
            .with("j0", j0.as_deref().map_or(Json::from("product over the zeros of s0"), Json::floats)),
        Task::Uniqueness { beta1, beta2 } => {
            Json::object().with("beta1", angle_json(beta1)).with("beta2", angle_json(beta2))
        }
        Task::Gauge { beta, points } => {
            Json::object().with("beta", angle_json(&beta.unwrap_or_else(half_pi))).with("points", *points)
        }
    }
}

fn half_pi() -> Angle {
    Angle::parse("pi/2").expect("literal angle")
}

fn execute(space: &DbSpace, task: &Task, index: usize, betas: &[f64], seed: u64) -> Result<TaskResult, DbError> {
    match task {
        Task::Spectrum { beta } => spectrum_task(space, beta, index),
        Task::VerifyRankOne { betas: list, n } => rank_one_task(space, &list_or(list, || betas.to_vec()), *n, index),
        Task::VerifyGenerating { betas: list } => generating_task(space, &list_or(list, || betas.to_vec())),
        Task::VerifyLemmas { draws } => lemma_task(space, *draws, &mut task_rng(seed, index)),
        Task::ZeroFree { beta } => zero_free_task(space, beta),
        Task::Theorem43 { betas: list, j0 } => {
            cross_beta_task(space, &list_or(list, || clustered_betas(5)), j0.as_deref())
        }
        Task::Uniqueness { beta1, beta2 } => uniqueness_task(space, beta1, beta2),
        Task::Gauge { beta, points } => gauge_task(space, beta.as_ref(), *points, &mut task_rng(seed, index)),
    }
}

fn oracle_values(space: &DbSpace, beta: f64) -> Result<Option<Vec<f64>>, DbError> {
    match space.provenance() {
        Provenance::Jacobi(data) if beta > 0.0 && beta < PI => Ok(Some(oracle_eigensystem(data, beta)?.values)),
        _ => Ok(None),
    }
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn spectrum_task(space: &DbSpace, beta: &Angle, index: usize) -> Result<TaskResult, DbError> {
    let spec = space.spectrum(beta.value)?;
    let mut r = TaskResult::new();
    r.results = Json::object()
        .with("count", spec.len())
        .with("points", Json::floats(&spec.points))
        .with("s_beta_prime", Json::floats(&spec.derivs))
        .with("k_diag", Json::floats(&spec.diag))
        .with("jumps", spec.jumps.as_deref().map(Json::floats))
        .with("relation_case", spec.relation_case)
        .with("certified", spec.certified);
    if let Some(oracle) = oracle_values(space, beta.value)? {
        let radius = spec.points.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        r.comparisons.push(Comparison {
            quantity: "spectrum",
            primary: "zeros of s_beta by sign-change scan",
            reference: "dense eigensolve of the boundary-modified jacobi matrix",
            deviation: max_abs_diff(&spec.points, &oracle),
            tolerance: space.numerics().tol * (1.0 + radius),
        });
    }
    if space.dim().is_finite() {
        r.checks.push(("zero count certified", spec.certified));
    }
    let mut csv = String::from("x_k,s_beta_prime,k_diag,jump\n");
    for k in 0..spec.len() {
        let jump = spec.jumps.as_ref().map_or(String::new(), |j| format!("{:.16e}", j[k]));
        csv.push_str(&format!("{:.16e},{:.16e},{:.16e},{jump}\n", spec.points[k], spec.derivs[k], spec.diag[k]));
    }
    r.table = Some((format!("spectrum_{index:02}.csv"), csv));
    Ok(r)
}

fn rank_one_task(space: &DbSpace, betas: &[f64], n: Option<usize>, index: usize) -> Result<TaskResult, DbError> {
    let mut r = TaskResult::new();
    let mut rows = Vec::with_capacity(betas.len());
    let mut csv = String::from("beta,max_deviation,oracle_deviation,tolerance,pass\n");
    let (mut worst, mut worst_oracle, mut tol, mut all_pass) = (0.0f64, 0.0f64, 0.0f64, true);
    let mut have_oracle = false;
    for &beta in betas {
        let rep = verify_rank_one(space, beta, n)?;
        let oracle = oracle_values(space, beta)?;
        let oracle_dev = oracle.as_ref().map(|o| max_abs_diff(o, &rep.eigenvalues).max(max_abs_diff(o, &rep.zeros)));
        worst = worst.max(rep.max_deviation);
        tol = tol.max(rep.tolerance);
        all_pass &= rep.pass;
        if let Some(d) = oracle_dev {
            have_oracle = true;
            worst_oracle = worst_oracle.max(d);
            all_pass &= d <= rep.tolerance;
        }
        csv.push_str(&format!(
            "{:.16e},{:.16e},{},{:.16e},{}\n",
            beta,
            rep.max_deviation,
            oracle_dev.map_or(String::new(), |d| format!("{d:.16e}")),
            rep.tolerance,
            rep.pass
        ));
        rows.push(
            Json::object()
                .with("beta", beta)
                .with("max_deviation", rep.max_deviation)
                .with("oracle_deviation", oracle_dev)
                .with("tolerance", rep.tolerance)
                .with("compared", Json::Array(vec![Json::from(rep.compared.start), Json::from(rep.compared.end)])),
        );
    }
    r.comparisons.push(Comparison {
        quantity: "eigenvalues of S_beta",
        primary: "rank-one perturbation of diag(spec S_pi/2)",
        reference: "zeros of s_beta by sign-change scan",
        deviation: worst,
        tolerance: tol,
    });
    if have_oracle {
        r.comparisons.push(Comparison {
            quantity: "eigenvalues of S_beta",
            primary: "rank-one perturbation and zero scan",
            reference: "dense eigensolve of the boundary-modified jacobi matrix",
            deviation: worst_oracle,
            tolerance: tol,
        });
    }
    r.checks.push(("every angle within tolerance", all_pass));
    r.results = Json::object().with("sweep", Json::Array(rows));
    r.table = Some((format!("rank_one_{index:02}.csv"), csv));
    Ok(r)
}

fn generating_task(space: &DbSpace, betas: &[f64]) -> Result<TaskResult, DbError> {
    let mut r = TaskResult::new();
    let mut rows = Vec::new();
    let mut all = true;
    for &beta in betas {
        let rep = verify_generating(space, beta, None)?;
        all &= rep.pass;
        rows.push(
            Json::object()
                .with("beta", beta)
                .with("min_projection", rep.min_projection)
                .with("gram_sigma_min", rep.gram_sigma_min)
                .with("pass", rep.pass),
        );
    }
    let relation = verify_generating(space, 0.0, None)?;
    r.checks.push(("s0 generates S_beta on the grid", all));
    r.checks.push(("s0 does not generate the relation S_0", !relation.pass && relation.relation_case));
    r.results = Json::object()
        .with("sweep", Json::Array(rows))
        .with("relation_case", Json::object().with("beta", 0.0).with("generating", relation.pass));
    Ok(r)
}

/// Random element of `B` from real samples on `spec(S_pi/2)`.
fn random_element(space: &DbSpace, rng: &mut ChaCha8Rng) -> Result<EntireFunction, DbError> {
    let n = space.spectrum(FRAC_PI_2)?.len();
    let values = (0..n).map(|_| C::new(rng.gen_range(-1.0..1.0), 0.0)).collect();
    space.reconstruct(&SampledFunction { beta: FRAC_PI_2, values })
}

/// Random unit element of `dom(S)`: `(f - f(w)/s0(w) s0) / (z - w)`.
fn random_domain_element(space: &DbSpace, rng: &mut ChaCha8Rng) -> Result<EntireFunction, DbError> {
    let f = random_element(space, rng)?;
    let (lo, hi) = space.numerics().window;
    let s0max = window_grid(space, 64)
        .into_iter()
        .map(|x| space.s0().eval_real(x).map(f64::abs))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .fold(0.0f64, f64::max);
    let mut w = 0.5 * (lo + hi);
    for _ in 0..64 {
        w = rng.gen_range(lo..hi);
        if space.s0().eval_real(w)?.abs() > 1e-2 * s0max {
            break;
        }
    }
    let t = f.eval_real(w)? / space.s0().eval_real(w)?;
    let num = f.sub(&space.s0().scale_real(t));
    let h = EntireFunction::divided_difference(num, C::new(w, 0.0));
    let norm = space.norm_sq(&h)?.sqrt();
    Ok(if norm > 0.0 { h.scale_real(1.0 / norm) } else { h })
}

fn lemma_task(space: &DbSpace, draws: usize, rng: &mut ChaCha8Rng) -> Result<TaskResult, DbError> {
    let mut r = TaskResult::new();
    let (lo, hi) = space.numerics().window;
    let (mut orth, mut inner, mut inner_tol) = (0.0f64, 0.0f64, 0.0f64);
    let (mut orth_fail, mut inner_fail) = (0usize, 0usize);
    let mut orth_tol = 0.0f64;
    for _ in 0..draws {
        let beta = rng.gen_range(GRID_MARGIN..PI - GRID_MARGIN);
        let h = random_domain_element(space, rng)?;
        let rep = check_lemma_orthogonality(space, beta, &h)?;
        orth = orth.max(rep.residual);
        orth_tol = rep.tolerance;
        orth_fail += usize::from(!rep.pass);

        let f = random_element(space, rng)?;
        let w = C::new(rng.gen_range(lo..hi), rng.gen_range(-1.0..1.0));
        let rep = check_lemma_inner(space, beta, &f, w)?;
        inner = inner.max(rep.residual / rep.tolerance);
        inner_tol = inner_tol.max(rep.tolerance);
        inner_fail += usize::from(!rep.pass);
    }
    r.comparisons.push(Comparison {
        quantity: "<s_beta, h> for h in dom(S)",
        primary: "adaptive quadrature against 1/|e|^2",
        reference: "zero (and the parseval form on spec S_pi/2)",
        deviation: orth,
        tolerance: orth_tol,
    });
    r.comparisons.push(Comparison {
        quantity: "(<s0, g> + pi f(w)) / tolerance",
        primary: "parseval form on spec S_pi/2",
        reference: "-pi f(w)",
        deviation: inner,
        tolerance: 1.0,
    });
    r.results = Json::object()
        .with("orthogonality_failures", orth_fail)
        .with("inner_failures", inner_fail)
        .with("max_orthogonality_residual", orth)
        .with("max_inner_tolerance", inner_tol);
    Ok(r)
}

fn zero_free_task(space: &DbSpace, beta: &Angle) -> Result<TaskResult, DbError> {
    let m = zero_free_membership(space, beta.value)?;
    let mut r = TaskResult::new();
    let verdict = match m.verdict {
        Verdict::InSpace => "in-space",
        Verdict::NotInSpace => "not-in-space",
    };
    let stat = m.stat.value();
    let literal = PI * stat;
    let mut results = Json::object()
        .with("verdict", verdict)
        .with("stat", stat)
        .with("stat_tail", m.stat.tail)
        .with("residues", Json::floats(&m.residues))
        .with("norm_sq", m.norm_sq)
        .with("predicted_norm_sq", m.predicted_norm_sq)
        .with("literal_pi_stat", literal)
        .with("literal_pi_stat_residual", m.norm_sq.map(|n| (n - literal).abs() / n.abs().max(f64::MIN_POSITIVE)))
        .with("zero_free_margin", m.zero_free_margin);
    if let Some(g) = &m.g {
        results.push("g_at_zero", g.eval_real(0.0)?);
    }
    r.results = results;
    r.comparisons.push(Comparison {
        quantity: "1/j partial fractions",
        primary: "direct evaluation of 1/j",
        reference: "sum of c_k / (z - x_k)",
        deviation: m.partial_fractions.max_deviation,
        tolerance: m.partial_fractions.tolerance,
    });
    if m.verdict == Verdict::InSpace {
        r.comparisons.push(Comparison {
            quantity: "||s_beta / j||^2 (relative)",
            primary: "parseval norm of g rebuilt from samples c_k s_beta'(x_k)",
            reference: "pi sin(beta) times the summability statistic",
            deviation: m.norm_identity_residual().unwrap_or(f64::INFINITY),
            tolerance: 1e-8,
        });
        r.comparisons.push(Comparison {
            quantity: "g (relative)",
            primary: "kernel-basis reconstruction",
            reference: "direct quotient s_beta / j",
            deviation: m.direct_deviation.unwrap_or(f64::INFINITY),
            tolerance: 1e-8,
        });
        r.checks.push(("g zero-free on the test grid", m.is_zero_free()));
    }
    Ok(r)
}

fn cross_beta_task(space: &DbSpace, betas: &[f64], j0: Option<&[f64]>) -> Result<TaskResult, DbError> {
    let j = match j0 {
        Some(c) => EntireFunction::polynomial(c.to_vec()),
        None => canonical_product(space, 0.0, None)?,
    };
    let rep = theorem43_consistency(space, betas, &j)?;
    let mut r = TaskResult::new();
    r.comparisons.push(Comparison {
        quantity: "U_beta(1/j0) across angles (relative)",
        primary: "reconstruction at each angle",
        reference: "reconstruction at every other angle",
        deviation: rep.max_pair_deviation,
        tolerance: 1e-8,
    });
    r.comparisons.push(Comparison {
        quantity: "s0 / j0 (relative)",
        primary: "reconstruction U_beta(1/j0)",
        reference: "direct quotient s0 / j0",
        deviation: rep.direct_deviation.unwrap_or(f64::INFINITY),
        tolerance: 1e-8,
    });
    r.checks.push(("1/j0 in L2(m_beta) at every angle", rep.l2_norms.iter().all(|n| n.is_finite())));
    r.results =
        Json::object().with("l2_norms", Json::floats(&rep.l2_norms)).with("finite_surrogate", rep.finite_surrogate);
    Ok(r)
}

fn uniqueness_task(space: &DbSpace, beta1: &Angle, beta2: &Angle) -> Result<TaskResult, DbError> {
    let rep = uniqueness_check(space, beta1.value, beta2.value)?;
    let mut r = TaskResult::new();
    r.comparisons.push(Comparison {
        quantity: "g_beta1 / g_beta2 (relative spread)",
        primary: "pointwise ratio on the test grid",
        reference: "its mean",
        deviation: rep.max_rel_deviation,
        tolerance: 1e-8,
    });
    r.comparisons.push(Comparison {
        quantity: "imaginary part of the ratio (relative)",
        primary: "mean ratio",
        reference: "real axis",
        deviation: rep.imag_part,
        tolerance: 1e-8,
    });
    r.results = Json::object().with("ratio", rep.ratio[0]);
    Ok(r)
}

fn gauge_task(
    space: &DbSpace,
    beta: Option<&Angle>,
    points: usize,
    rng: &mut ChaCha8Rng,
) -> Result<TaskResult, DbError> {
    let beta = beta.copied().unwrap_or_else(half_pi);
    let m = zero_free_membership(space, beta.value)?;
    let g = m.g.ok_or_else(|| DbError::NotInDomain(format!("no zero-free function at beta = {}", beta.value)))?;
    let (lo, hi) = space.numerics().window;
    let grid: Vec<C> = (0..points).map(|_| C::new(rng.gen_range(lo..hi), rng.gen_range(-1.0..1.0))).collect();
    let rep = gauge_check(space, &g, &grid)?;
    let ids = gauge_identities(space)?;
    let mut r = TaskResult::new();
    r.comparisons.push(Comparison {
        quantity: "h0(S) (s0 / h0) (relative)",
        primary: "function-of-S multiplication",
        reference: "s0",
        deviation: ids.forward_residual,
        tolerance: 1e-9,
    });
    r.comparisons.push(Comparison {
        quantity: "(1/h0)(S) s0 (relative)",
        primary: "function-of-S division",
        reference: "s0 / h0",
        deviation: ids.inverse_residual,
        tolerance: 1e-9,
    });
    r.checks.push(("g(w) nonzero at every grid point", rep.pass));
    let min_margin = rep.margins.iter().copied().fold(f64::INFINITY, f64::min);
    r.results = Json::object()
        .with("grid", Json::Array(grid.iter().map(|z| Json::floats(&[z.re, z.im])).collect()))
        .with("min_margin", min_margin)
        .with("failures", Json::Array(rep.failures.iter().map(|&k| Json::from(k)).collect()));
    Ok(r)
}
