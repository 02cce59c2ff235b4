//! From certified bound tables to a machine-checkable certificate: upper
//! bounds on the ratio functions `f(p) = ∫ψ_+^{p-1}/∫ψ_+^p` and
//! `g(q) = ∫ψ_-^{q+1}/∫ψ_-^q`, a certified sup bound on the negative part,
//! and the three-interval inequality chain
//!
//! - `f(1) + g(2) < 2` covers `1 ≤ p ≤ 2`,
//! - `f(2) + g(3) < 2` covers `2 ≤ p ≤ 3`,
//! - `f(3) + ‖ψ_-‖_∞ < 2` covers `3 ≤ p ≤ ∞`,
//!
//! using that `f` is decreasing and `g` is increasing (an analytic fact,
//! recorded as an assumption in the certificate) and `g ≤ ‖ψ_-‖_∞`.
//! Together with `∫ψ_+ = ∫ψ_-` this certifies `‖ψ_+‖_p / ‖ψ_-‖_p > 1` for
//! all `1 < p ≤ ∞`.

use serde::{Deserialize, Serialize};

use crate::fp::{add_up, EPS_M};
use crate::grid::GridSpec;
use crate::rigor::{self, BoundsRow, ErrorLedger, MarginReport, RigorError, SignedAccumulator};
use crate::trigpoly::{LipschitzBound, TrigEigenfunction, WaveTerm};

#[derive(Debug, thiserror::Error)]
pub enum CertifyError {
    #[error("bounds table has no row for p = {0}")]
    MissingRow(f64),
    #[error("missing ratio bound {kind:?}({p})")]
    MissingRatio { kind: RatioKind, p: f64 },
    #[error(
        "cannot certify {kind:?}({p}): lower bound for the denominator row p = {row_p} \
         is {value} ≤ 0 (grid too coarse)"
    )]
    DenominatorNotPositive { kind: RatioKind, p: f64, row_p: f64, value: f64 },
    #[error("sup bound must be positive and finite, got {0}")]
    InvalidSupValue(f64),
}

/// Which ratio family a bound belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RatioKind {
    F,
    G,
}

/// A certified upper bound on `f(p)` or `g(p)`, with the table rows it was
/// built from: `f(p) ≤ U_+(p−1)/L_+(p)` and `g(q) ≤ U_-(q+1)/L_-(q)`,
/// quotients rounded upward.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioBound {
    pub kind: RatioKind,
    pub p: f64,
    pub upper: f64,
    pub numerator_p: f64,
    pub numerator_value: f64,
    pub denominator_p: f64,
    pub denominator_value: f64,
}

fn find_row(rows: &[BoundsRow], p: f64) -> Result<&BoundsRow, CertifyError> {
    rows.iter().find(|r| r.p == p).ok_or(CertifyError::MissingRow(p))
}

fn upper_quotient(numerator: f64, denominator: f64) -> f64 {
    // one relative pad of 4ε keeps the quotient an upper bound without
    // switching rounding modes
    (numerator / denominator) * (1.0 + 4.0 * EPS_M)
}

/// Builds the ratio bounds used by the chain: `f` at `p ∈ {1,2,3}` and `g`
/// at `q ∈ {2,3}`. Requires table rows at `p ∈ {0,…,4}` with positive
/// lower bounds in every denominator.
pub fn ratio_bounds(rows: &[BoundsRow]) -> Result<Vec<RatioBound>, CertifyError> {
    let mut out = Vec::with_capacity(5);
    for p in [1.0f64, 2.0, 3.0] {
        let num = find_row(rows, p - 1.0)?;
        let den = find_row(rows, p)?;
        if !(den.l_plus > 0.0) {
            return Err(CertifyError::DenominatorNotPositive {
                kind: RatioKind::F,
                p,
                row_p: den.p,
                value: den.l_plus,
            });
        }
        out.push(RatioBound {
            kind: RatioKind::F,
            p,
            upper: upper_quotient(num.u_plus, den.l_plus),
            numerator_p: num.p,
            numerator_value: num.u_plus,
            denominator_p: den.p,
            denominator_value: den.l_plus,
        });
    }
    for q in [2.0f64, 3.0] {
        let num = find_row(rows, q + 1.0)?;
        let den = find_row(rows, q)?;
        if !(den.l_minus > 0.0) {
            return Err(CertifyError::DenominatorNotPositive {
                kind: RatioKind::G,
                p: q,
                row_p: den.p,
                value: den.l_minus,
            });
        }
        out.push(RatioBound {
            kind: RatioKind::G,
            p: q,
            upper: upper_quotient(num.u_minus, den.l_minus),
            numerator_p: num.p,
            numerator_value: num.u_minus,
            denominator_p: den.p,
            denominator_value: den.l_minus,
        });
    }
    Ok(out)
}

/// How a sup-norm bound on the negative part was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SupMethod {
    /// Max of `−ψ̄` over all midpoints, plus the cube variation bound and
    /// the evaluation error.
    GridPlusAlpha,
    /// The coefficient sum `Σ|c_i|`.
    CoefficientSum,
    /// A caller-supplied analytic value, recorded as externally supplied.
    AnalyticSupplied,
}

/// A certified upper bound on `‖ψ_-‖_∞`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupBound {
    pub value: f64,
    pub method: SupMethod,
}

impl SupBound {
    /// Records a caller-supplied analytic sup bound. Its validity is the
    /// caller's responsibility; the method field says so.
    pub fn analytic_supplied(value: f64) -> Result<Self, CertifyError> {
        if !(value > 0.0 && value.is_finite()) {
            return Err(CertifyError::InvalidSupValue(value));
        }
        Ok(SupBound { value, method: SupMethod::AnalyticSupplied })
    }

    /// The grid bound from an existing full-grid accumulator: every point
    /// of a cube is within `α` of its midpoint, and the computed midpoint
    /// value is within the evaluation error of the true one.
    pub fn from_accumulator(
        f: &TrigEigenfunction,
        acc: &SignedAccumulator,
        alpha: f64,
        eval_error: f64,
    ) -> SupBound {
        let grid_max_neg = (-acc.min_value()).max(0.0);
        let grid = add_up(add_up(grid_max_neg, alpha), eval_error);
        let coef = f.coefficient_sup_bound();
        if grid <= coef {
            SupBound { value: grid, method: SupMethod::GridPlusAlpha }
        } else {
            SupBound { value: coef, method: SupMethod::CoefficientSum }
        }
    }
}

/// Certified upper bound on `‖ψ_-‖_∞`: the smaller of the midpoint-grid
/// bound and the coefficient sum.
pub fn sup_bound_negative_part(
    f: &TrigEigenfunction,
    spec: &GridSpec,
    alpha: f64,
) -> Result<SupBound, RigorError> {
    let acc = rigor::sweep(f, spec, alpha, &[0.0], 64)?;
    let ledger = rigor::build_ledger(f, spec, alpha, &[0.0], acc.unclassified_cells())?;
    Ok(SupBound::from_accumulator(f, &acc, alpha, ledger.eval_error))
}

/// One leg of the interval chain, with its numeric slack `2 − lhs`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChainCheck {
    pub name: String,
    pub covers: String,
    pub lhs: f64,
    pub threshold: f64,
    pub slack: f64,
    pub passed: bool,
}

/// Certificate verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Verified,
    Failed,
}

/// Outcome of the chain verification.
#[derive(Debug, Clone)]
pub struct ChainReport {
    pub checks: Vec<ChainCheck>,
    pub verdict: Verdict,
}

fn chain_check(name: &str, covers: &str, lhs: f64) -> ChainCheck {
    ChainCheck {
        name: name.to_string(),
        covers: covers.to_string(),
        lhs,
        threshold: 2.0,
        slack: 2.0 - lhs,
        passed: lhs < 2.0,
    }
}

fn ratio_upper(ratios: &[RatioBound], kind: RatioKind, p: f64) -> Result<f64, CertifyError> {
    ratios
        .iter()
        .find(|r| r.kind == kind && r.p == p)
        .map(|r| r.upper)
        .ok_or(CertifyError::MissingRatio { kind, p })
}

/// Runs the three chain checks. The verdict is `Verified` exactly when all
/// three hold strictly and both ledger margins passed.
pub fn verify_chain(
    ratios: &[RatioBound],
    sup: &SupBound,
    margins: &MarginReport,
) -> Result<ChainReport, CertifyError> {
    let f1 = ratio_upper(ratios, RatioKind::F, 1.0)?;
    let f2 = ratio_upper(ratios, RatioKind::F, 2.0)?;
    let f3 = ratio_upper(ratios, RatioKind::F, 3.0)?;
    let g2 = ratio_upper(ratios, RatioKind::G, 2.0)?;
    let g3 = ratio_upper(ratios, RatioKind::G, 3.0)?;
    let checks = vec![
        chain_check("f(1) + g(2)", "1 <= p <= 2", add_up(f1, g2)),
        chain_check("f(2) + g(3)", "2 <= p <= 3", add_up(f2, g3)),
        chain_check("f(3) + sup", "3 <= p <= inf", add_up(f3, sup.value)),
    ];
    let verdict = if checks.iter().all(|c| c.passed) && margins.all_passed() {
        Verdict::Verified
    } else {
        Verdict::Failed
    };
    Ok(ChainReport { checks, verdict })
}

/// A recorded comparison of a certified quantity against a fixed reference
/// limit (not part of the verdict; the chain checks are).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NamedBound {
    pub quantity: String,
    pub value: f64,
    pub limit: f64,
    pub within: bool,
}

/// The six reference limits recorded alongside the chain: `f(1) < 0.8`,
/// `f(2) < 0.6`, `f(3) < 0.5`, `sup ≤ 1.52`, `g(2) < 1.2`, `g(3) < 1.3`.
pub fn reference_bound_checks(
    ratios: &[RatioBound],
    sup: &SupBound,
) -> Result<Vec<NamedBound>, CertifyError> {
    let named = |q: &str, value: f64, limit: f64| NamedBound {
        quantity: q.to_string(),
        value,
        limit,
        within: value < limit,
    };
    Ok(vec![
        named("f(1)", ratio_upper(ratios, RatioKind::F, 1.0)?, 0.8),
        named("f(2)", ratio_upper(ratios, RatioKind::F, 2.0)?, 0.6),
        named("f(3)", ratio_upper(ratios, RatioKind::F, 3.0)?, 0.5),
        named("sup_negative_part", sup.value, 1.52),
        named("g(2)", ratio_upper(ratios, RatioKind::G, 2.0)?, 1.2),
        named("g(3)", ratio_upper(ratios, RatioKind::G, 3.0)?, 1.3),
    ])
}

/// Description of the eigenfunction a certificate was computed for.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EigenfunctionSummary {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dimension: usize,
    pub eigenvalue: f64,
    pub terms: Vec<WaveTerm>,
}

impl EigenfunctionSummary {
    pub fn new(f: &TrigEigenfunction, name: Option<String>) -> Self {
        EigenfunctionSummary {
            name,
            dimension: f.dimension(),
            eigenvalue: f.eigenvalue(),
            terms: f.terms().to_vec(),
        }
    }
}

/// Grid parameters as recorded in artifacts.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridSummary {
    pub cells_per_axis: u64,
    pub dimension: usize,
    pub side: f64,
}

impl From<&GridSpec> for GridSummary {
    fn from(spec: &GridSpec) -> Self {
        GridSummary {
            cells_per_axis: spec.cells_per_axis(),
            dimension: spec.dimension(),
            side: spec.side(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateInputs {
    pub eigenfunction: EigenfunctionSummary,
    pub grid: GridSummary,
    pub lipschitz: LipschitzBound,
    pub alpha: f64,
    pub exponents: Vec<f64>,
    pub sup_mode: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundsSection {
    pub rows: Vec<BoundsRow>,
    pub unclassified_cells: u64,
    pub positive_cells: u64,
    pub negative_cells: u64,
    pub cells: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Provenance {
    pub generator: String,
    pub version: String,
    pub timestamp_utc: String,
    pub wall_time_seconds: f64,
}

/// The full machine-checked record: inputs, certified bounds, error
/// ledger and margins, ratio bounds, sup bound, chain checks, verdict.
/// Re-running [`Certificate::recheck`] on a deserialized certificate
/// reproduces the verdict from the recorded fields alone.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Certificate {
    pub inputs: CertificateInputs,
    pub bounds: BoundsSection,
    pub ledger: ErrorLedger,
    pub margins: MarginReport,
    pub ratios: Vec<RatioBound>,
    pub sup_bound: SupBound,
    pub chain_checks: Vec<ChainCheck>,
    pub bound_checks: Vec<NamedBound>,
    pub assumptions: Vec<String>,
    pub verdict: Verdict,
    pub provenance: Provenance,
}

impl Certificate {
    pub fn verdict(&self) -> Verdict {
        self.verdict
    }

    /// Recomputes the chain checks and verdict from the recorded ratios,
    /// sup bound and margins, without re-running any sweep.
    pub fn recheck(&self) -> Result<Verdict, CertifyError> {
        Ok(verify_chain(&self.ratios, &self.sup_bound, &self.margins)?.verdict)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(json: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(json)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rigor::{check_margins, MarginCheck};
    use crate::trigpoly::cube_variation_bound;

    /// Rows transcribed from the reference run at N = 1500 (six printed
    /// decimals).
    fn reference_rows() -> Vec<BoundsRow> {
        let data = [
            (0.0, 0.396101, 0.401198, 0.598802, 0.603899),
            (1.0, 0.511500, 0.521105, 0.509072, 0.523531),
            (2.0, 0.954454, 0.979178, 0.520968, 0.545691),
            (3.0, 2.063070, 2.132510, 0.578638, 0.616942),
            (4.0, 4.820963, 5.021853, 0.676264, 0.733500),
        ];
        data.iter()
            .map(|&(p, l_plus, u_plus, l_minus, u_minus)| BoundsRow {
                p,
                l_plus,
                u_plus,
                l_minus,
                u_minus,
            })
            .collect()
    }

    fn passing_margins() -> MarginReport {
        MarginReport {
            eval_error: MarginCheck { value: 1e-14, limit: 5e-4, passed: true },
            total_error: MarginCheck { value: 1e-10, limit: 0.01, passed: true },
        }
    }

    fn failing_margins() -> MarginReport {
        MarginReport {
            eval_error: MarginCheck { value: 1.0, limit: 5e-4, passed: false },
            total_error: MarginCheck { value: 1e-10, limit: 0.01, passed: true },
        }
    }

    #[test]
    fn ratio_bounds_from_reference_rows() {
        let ratios = ratio_bounds(&reference_rows()).unwrap();
        assert_eq!(ratios.len(), 5);
        let get = |kind, p| ratios.iter().find(|r| r.kind == kind && r.p == p).unwrap();

        let f1 = get(RatioKind::F, 1.0);
        assert!((f1.upper - 0.401198 / 0.511500).abs() < 1e-9);
        assert!(f1.upper < 0.785);
        assert_eq!(f1.numerator_p, 0.0);
        assert_eq!(f1.denominator_p, 1.0);

        assert!(get(RatioKind::F, 2.0).upper < 0.546);
        assert!(get(RatioKind::F, 3.0).upper < 0.475);
        let g2 = get(RatioKind::G, 2.0);
        assert!((g2.upper - 0.616942 / 0.520968).abs() < 1e-9);
        assert!(g2.upper < 1.185);
        assert!(get(RatioKind::G, 3.0).upper < 1.268);

        // every upper bound strictly exceeds the plain quotient it padded
        for r in &ratios {
            assert!(r.upper > r.numerator_value / r.denominator_value);
            assert!(r.upper > 0.0);
        }
    }

    #[test]
    fn ratio_bounds_error_paths() {
        let mut rows = reference_rows();
        rows.remove(4);
        assert!(matches!(ratio_bounds(&rows), Err(CertifyError::MissingRow(p)) if p == 4.0));

        let mut rows = reference_rows();
        rows[2].l_plus = 0.0;
        assert!(matches!(
            ratio_bounds(&rows),
            Err(CertifyError::DenominatorNotPositive { kind: RatioKind::F, p, .. }) if p == 2.0
        ));
    }

    #[test]
    fn sup_bound_methods() {
        let psi = TrigEigenfunction::paper_psi();
        let spec = GridSpec::new(64, 3).unwrap();
        let lip = LipschitzBound::user_supplied(6.0 * std::f64::consts::PI);
        let alpha = cube_variation_bound(&lip, spec.side(), 3).unwrap();

        let sup = sup_bound_negative_part(&psi, &spec, alpha).unwrap();
        assert_eq!(sup.method, SupMethod::GridPlusAlpha);
        // true sup is 3/2; the grid bound brackets it from above within 2α
        assert!(sup.value >= 1.5, "grid sup bound {} below the true sup", sup.value);
        assert!(sup.value <= 1.5 + 2.0 * alpha);

        // with a hopeless grid the coefficient sum wins
        let coarse = GridSpec::new(2, 3).unwrap();
        let alpha_coarse = cube_variation_bound(&lip, coarse.side(), 3).unwrap();
        let sup_coarse = sup_bound_negative_part(&psi, &coarse, alpha_coarse).unwrap();
        assert_eq!(sup_coarse.method, SupMethod::CoefficientSum);
        assert_eq!(sup_coarse.value, 3.0);

        let analytic = SupBound::analytic_supplied(1.5).unwrap();
        assert_eq!(analytic.value, 1.5);
        assert_eq!(analytic.method, SupMethod::AnalyticSupplied);
        assert!(SupBound::analytic_supplied(-1.0).is_err());
    }

    #[test]
    fn chain_checks_and_slacks() {
        let mut ratios = vec![
            RatioBound {
                kind: RatioKind::F,
                p: 1.0,
                upper: 0.785,
                numerator_p: 0.0,
                numerator_value: 0.0,
                denominator_p: 1.0,
                denominator_value: 1.0,
            },
            RatioBound {
                kind: RatioKind::F,
                p: 2.0,
                upper: 0.546,
                numerator_p: 1.0,
                numerator_value: 0.0,
                denominator_p: 2.0,
                denominator_value: 1.0,
            },
            RatioBound {
                kind: RatioKind::F,
                p: 3.0,
                upper: 0.475,
                numerator_p: 2.0,
                numerator_value: 0.0,
                denominator_p: 3.0,
                denominator_value: 1.0,
            },
            RatioBound {
                kind: RatioKind::G,
                p: 2.0,
                upper: 1.185,
                numerator_p: 3.0,
                numerator_value: 0.0,
                denominator_p: 2.0,
                denominator_value: 1.0,
            },
            RatioBound {
                kind: RatioKind::G,
                p: 3.0,
                upper: 1.268,
                numerator_p: 4.0,
                numerator_value: 0.0,
                denominator_p: 3.0,
                denominator_value: 1.0,
            },
        ];
        let sup = SupBound { value: 1.5109, method: SupMethod::GridPlusAlpha };
        let report = verify_chain(&ratios, &sup, &passing_margins()).unwrap();
        assert_eq!(report.verdict, Verdict::Verified);
        assert_eq!(report.checks.len(), 3);
        assert!((report.checks[0].slack - 0.030).abs() < 1e-9);
        assert!((report.checks[1].slack - 0.186).abs() < 1e-9);
        assert!((report.checks[2].slack - 0.0141).abs() < 1e-9);
        assert!(report.checks.iter().all(|c| c.passed && c.threshold == 2.0));

        // failed margins invalidate the verdict even with a passing chain
        let report = verify_chain(&ratios, &sup, &failing_margins()).unwrap();
        assert_eq!(report.verdict, Verdict::Failed);

        // a failing leg flips the verdict and reports negative slack
        ratios[3].upper = 1.30;
        let report = verify_chain(&ratios, &sup, &passing_margins()).unwrap();
        assert_eq!(report.verdict, Verdict::Failed);
        assert!(!report.checks[0].passed);
        assert!(report.checks[0].slack < 0.0);

        ratios.remove(0);
        assert!(matches!(
            verify_chain(&ratios, &sup, &passing_margins()),
            Err(CertifyError::MissingRatio { kind: RatioKind::F, .. })
        ));
    }

    #[test]
    fn reference_bounds_recorded() {
        let ratios = ratio_bounds(&reference_rows()).unwrap();
        let sup = SupBound { value: 1.5109, method: SupMethod::GridPlusAlpha };
        let checks = reference_bound_checks(&ratios, &sup).unwrap();
        assert_eq!(checks.len(), 6);
        assert!(checks.iter().all(|c| c.within), "{checks:?}");
        let limits: Vec<f64> = checks.iter().map(|c| c.limit).collect();
        assert_eq!(limits, vec![0.8, 0.6, 0.5, 1.52, 1.2, 1.3]);
    }

    #[test]
    fn certificate_round_trip_and_recheck() {
        let psi = TrigEigenfunction::paper_psi();
        let spec = GridSpec::new(8, 3).unwrap();
        let lip = LipschitzBound::user_supplied(6.0 * std::f64::consts::PI);
        let alpha = cube_variation_bound(&lip, spec.side(), 3).unwrap();
        let ledger = rigor::build_ledger(&psi, &spec, alpha, &[0.0, 1.0], 0).unwrap();
        let margins = check_margins(&ledger, alpha);
        let ratios = ratio_bounds(&reference_rows()).unwrap();
        let sup = SupBound { value: 1.5109, method: SupMethod::GridPlusAlpha };
        let report = verify_chain(&ratios, &sup, &margins).unwrap();
        let cert = Certificate {
            inputs: CertificateInputs {
                eigenfunction: EigenfunctionSummary::new(&psi, Some("paper-psi".into())),
                grid: (&spec).into(),
                lipschitz: lip,
                alpha,
                exponents: vec![0.0, 1.0, 2.0, 3.0, 4.0],
                sup_mode: "grid".into(),
            },
            bounds: BoundsSection {
                rows: reference_rows(),
                unclassified_cells: 17_199_000,
                positive_cells: 0,
                negative_cells: 0,
                cells: 3_375_000_000,
            },
            ledger,
            margins,
            ratios,
            sup_bound: sup,
            chain_checks: report.checks,
            bound_checks: vec![],
            assumptions: vec!["f decreasing, g increasing".into()],
            verdict: report.verdict,
            provenance: Provenance {
                generator: "eigenmass".into(),
                version: "0.0.0".into(),
                timestamp_utc: "2000-01-01T00:00:00Z".into(),
                wall_time_seconds: 0.0,
            },
        };
        let json = cert.to_json();
        let parsed = Certificate::from_json(&json).unwrap();
        assert_eq!(parsed.verdict(), cert.verdict());
        assert_eq!(parsed.recheck().unwrap(), cert.verdict());
        assert_eq!(parsed.bounds.rows.len(), 5);
        assert_eq!(parsed.inputs.eigenfunction.name.as_deref(), Some("paper-psi"));
    }
}
