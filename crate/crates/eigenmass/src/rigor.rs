//! The certified sweep: sign-classified accumulation over all grid cubes,
//! certified enclosures `[L_±, U_±]` per exponent, and the a-priori
//! floating-point error ledger.
//!
//! For every cube midpoint `x` the computed value `v = ψ̄(x)` is compared
//! against the inflated threshold `1.1α`, where `α` bounds the variation of
//! `ψ` within one cube. If `v > 1.1α` the cube certainly lies in `{ψ > 0}`
//! (and symmetrically for the negative side): for any `y` in the cube,
//! `ψ(y) = [ψ(y)−ψ(x)] + [ψ(x)−v] + v > −α − 0.05α + 1.1α > 0`, provided
//! the evaluation error stays below `0.05α` — which is exactly what the
//! ledger's first margin check certifies. Classified cubes contribute
//! `ℓ^d (|v| + 1.1α)^p` to the upper sum and `ℓ^d (|v| − 1.1α)^p` to the
//! lower sum of their sign; unclassified cubes are counted in `S_N` and
//! contribute `ℓ^d (2.2α)^p` to the upper bounds only.
//!
//! Summation is hierarchical with a fixed shape — values are summed along
//! each row (last axis), rows are folded into per-plane partials (first
//! axis), and planes are folded in index order — so the result is bitwise
//! independent of worker and tile counts, and the ledger can charge each
//! level against the magnitude of its partials.

use std::ops::Range;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::fp::{add_up, mul_up, pow_up, sub_down, EPS_M};
use crate::grid::{GridSpec, Tile};
use crate::trigpoly::{MidpointEvaluator, TrigEigenfunction};

#[derive(Debug, thiserror::Error)]
pub enum RigorError {
    #[error("cube variation bound must be positive and finite, got {0}")]
    NonPositiveAlpha(f64),
    #[error("exponents must be finite and nonnegative, got {0}")]
    InvalidExponent(f64),
    #[error("at least one exponent is required")]
    EmptyExponents,
    #[error("accumulators have different exponent lists")]
    ExponentMismatch,
    #[error("tile has {got} axes, grid has {expected}")]
    TileDimensionMismatch { got: usize, expected: usize },
    #[error("tile range {start}..{end} on axis {axis} exceeds the grid ({cells} cells per axis)")]
    TileOutOfRange { axis: usize, start: u64, end: u64, cells: u64 },
    #[error("non-finite evaluation at cell {cell}")]
    NonFiniteEvaluation { cell: String },
    #[error("accumulator covers {seen} cells, the grid has {expected}")]
    IncompleteCoverage { seen: u64, expected: u64 },
    #[error("grid of {cells_per_axis}^{dimension} cells does not fit in a 64-bit count")]
    GridTooLarge { cells_per_axis: u64, dimension: usize },
}

/// The classification threshold `1.1α`, rounded up. Both the sweep and the
/// finalization use this one value.
pub fn classification_threshold(alpha: f64) -> f64 {
    mul_up(1.1, alpha)
}

/// How a single exponent is applied to a base.
#[derive(Debug, Clone, Copy, PartialEq)]
enum Power {
    /// Repeated multiplication (integer exponents up to 8).
    Int(u32),
    /// Platform power function.
    Real(f64),
}

impl Power {
    fn classify(p: f64) -> Result<Power, RigorError> {
        if !p.is_finite() || p < 0.0 {
            return Err(RigorError::InvalidExponent(p));
        }
        if p.fract() == 0.0 && p <= 8.0 {
            Ok(Power::Int(p as u32))
        } else {
            Ok(Power::Real(p))
        }
    }

    /// `base^p` with the sweep's exact recipe: integer powers multiply up
    /// from 1.0 in sequence, real powers use the platform function.
    fn apply(&self, base: f64) -> f64 {
        match *self {
            Power::Int(k) => {
                let mut r = 1.0f64;
                for _ in 0..k {
                    r *= base;
                }
                r
            }
            Power::Real(p) => base.powf(p),
        }
    }
}

/// Precompiled exponent list. Integer exponents are evaluated with one
/// shared running product in ascending order, which reproduces the
/// repeated-multiplication recipe of [`Power::apply`] bitwise while doing
/// each multiplication only once.
struct PowerPlan {
    /// (power, output slot), integer entries sorted ascending.
    entries: Vec<(Power, usize)>,
    len: usize,
}

impl PowerPlan {
    fn new(exponents: &[f64]) -> Result<Self, RigorError> {
        if exponents.is_empty() {
            return Err(RigorError::EmptyExponents);
        }
        let mut entries = Vec::with_capacity(exponents.len());
        for (slot, &p) in exponents.iter().enumerate() {
            entries.push((Power::classify(p)?, slot));
        }
        entries.sort_by(|a, b| match (a.0, b.0) {
            (Power::Int(x), Power::Int(y)) => x.cmp(&y),
            (Power::Int(_), Power::Real(_)) => std::cmp::Ordering::Less,
            (Power::Real(_), Power::Int(_)) => std::cmp::Ordering::Greater,
            (Power::Real(x), Power::Real(y)) => x.partial_cmp(&y).unwrap(),
        });
        Ok(PowerPlan { entries, len: exponents.len() })
    }

    #[inline]
    fn accumulate(&self, base: f64, acc: &mut [f64]) {
        let mut r = 1.0f64;
        let mut cur = 0u32;
        for &(power, slot) in &self.entries {
            match power {
                Power::Int(k) => {
                    while cur < k {
                        r *= base;
                        cur += 1;
                    }
                    acc[slot] += r;
                }
                Power::Real(p) => acc[slot] += base.powf(p),
            }
        }
    }
}

/// Running sums of the sign-classified accumulation for a list of
/// exponents: upper and lower partial Riemann sums per sign (already scaled
/// by the cell volume), the count `S_N` of unclassified cells, and the
/// range of computed midpoint values.
#[derive(Debug, Clone)]
pub struct SignedAccumulator {
    exponents: Vec<f64>,
    sums: RawSums,
}

#[derive(Debug, Clone)]
struct RawSums {
    s_u_plus: Vec<f64>,
    s_l_plus: Vec<f64>,
    s_u_minus: Vec<f64>,
    s_l_minus: Vec<f64>,
    s_n: u64,
    positive_cells: u64,
    negative_cells: u64,
    cells_seen: u64,
    min_value: f64,
    max_value: f64,
}

impl RawSums {
    fn zero(len: usize) -> Self {
        RawSums {
            s_u_plus: vec![0.0; len],
            s_l_plus: vec![0.0; len],
            s_u_minus: vec![0.0; len],
            s_l_minus: vec![0.0; len],
            s_n: 0,
            positive_cells: 0,
            negative_cells: 0,
            cells_seen: 0,
            min_value: f64::INFINITY,
            max_value: f64::NEG_INFINITY,
        }
    }

    fn reset(&mut self) {
        self.s_u_plus.fill(0.0);
        self.s_l_plus.fill(0.0);
        self.s_u_minus.fill(0.0);
        self.s_l_minus.fill(0.0);
        self.s_n = 0;
        self.positive_cells = 0;
        self.negative_cells = 0;
        self.cells_seen = 0;
        self.min_value = f64::INFINITY;
        self.max_value = f64::NEG_INFINITY;
    }

    /// Adds an unscaled row partial, applying the cell volume.
    fn absorb_row(&mut self, row: &RawSums, volume: f64) {
        for (dst, &src) in self.s_u_plus.iter_mut().zip(&row.s_u_plus) {
            *dst += volume * src;
        }
        for (dst, &src) in self.s_l_plus.iter_mut().zip(&row.s_l_plus) {
            *dst += volume * src;
        }
        for (dst, &src) in self.s_u_minus.iter_mut().zip(&row.s_u_minus) {
            *dst += volume * src;
        }
        for (dst, &src) in self.s_l_minus.iter_mut().zip(&row.s_l_minus) {
            *dst += volume * src;
        }
        self.merge_counts(row);
    }

    /// Componentwise addition of two scaled partials.
    fn add_assign(&mut self, other: &RawSums) {
        for (dst, &src) in self.s_u_plus.iter_mut().zip(&other.s_u_plus) {
            *dst += src;
        }
        for (dst, &src) in self.s_l_plus.iter_mut().zip(&other.s_l_plus) {
            *dst += src;
        }
        for (dst, &src) in self.s_u_minus.iter_mut().zip(&other.s_u_minus) {
            *dst += src;
        }
        for (dst, &src) in self.s_l_minus.iter_mut().zip(&other.s_l_minus) {
            *dst += src;
        }
        self.merge_counts(other);
    }

    fn merge_counts(&mut self, other: &RawSums) {
        self.s_n += other.s_n;
        self.positive_cells += other.positive_cells;
        self.negative_cells += other.negative_cells;
        self.cells_seen += other.cells_seen;
        self.min_value = self.min_value.min(other.min_value);
        self.max_value = self.max_value.max(other.max_value);
    }
}

impl SignedAccumulator {
    pub fn zero(exponents: &[f64]) -> Result<Self, RigorError> {
        PowerPlan::new(exponents)?;
        Ok(SignedAccumulator { exponents: exponents.to_vec(), sums: RawSums::zero(exponents.len()) })
    }

    pub fn exponents(&self) -> &[f64] {
        &self.exponents
    }

    pub fn s_u_plus(&self) -> &[f64] {
        &self.sums.s_u_plus
    }

    pub fn s_l_plus(&self) -> &[f64] {
        &self.sums.s_l_plus
    }

    pub fn s_u_minus(&self) -> &[f64] {
        &self.sums.s_u_minus
    }

    pub fn s_l_minus(&self) -> &[f64] {
        &self.sums.s_l_minus
    }

    /// Count of cells whose sign could not be certified.
    pub fn unclassified_cells(&self) -> u64 {
        self.sums.s_n
    }

    pub fn positive_cells(&self) -> u64 {
        self.sums.positive_cells
    }

    pub fn negative_cells(&self) -> u64 {
        self.sums.negative_cells
    }

    pub fn cells_seen(&self) -> u64 {
        self.sums.cells_seen
    }

    /// Smallest computed midpoint value (`+∞` if no cell was seen).
    pub fn min_value(&self) -> f64 {
        self.sums.min_value
    }

    /// Largest computed midpoint value (`−∞` if no cell was seen).
    pub fn max_value(&self) -> f64 {
        self.sums.max_value
    }

    /// Componentwise sum of two accumulators over the same exponent list.
    pub fn merge(&self, other: &SignedAccumulator) -> Result<SignedAccumulator, RigorError> {
        if self.exponents != other.exponents {
            return Err(RigorError::ExponentMismatch);
        }
        let mut out = self.clone();
        out.sums.add_assign(&other.sums);
        Ok(out)
    }
}

struct SweepCtx<'a> {
    evaluator: &'a MidpointEvaluator,
    threshold: f64,
    plan: &'a PowerPlan,
    cell_volume: f64,
}

/// Scans one row along the last axis into `row` (unscaled sums).
fn scan_row(
    ctx: &SweepCtx<'_>,
    prefix: &[u64],
    range: Range<u64>,
    row: &mut RawSums,
) -> Result<(), RigorError> {
    row.reset();
    let mut scan = ctx.evaluator.row_scan(prefix, range.start);
    let thr = ctx.threshold;
    for i in range {
        let v = scan.next_value();
        if !v.is_finite() {
            return Err(RigorError::NonFiniteEvaluation {
                cell: format!("{prefix:?} + [{i}]"),
            });
        }
        if v > thr {
            row.positive_cells += 1;
            let base_l = v - thr;
            ctx.plan.accumulate(v + thr, &mut row.s_u_plus);
            // classification guarantees base_l > 0; clamp keeps 0 ≤ S_L even
            // against a pathological threshold
            ctx.plan.accumulate(base_l.max(0.0), &mut row.s_l_plus);
        } else if v < -thr {
            row.negative_cells += 1;
            let a = -v;
            let base_l = a - thr;
            ctx.plan.accumulate(a + thr, &mut row.s_u_minus);
            ctx.plan.accumulate(base_l.max(0.0), &mut row.s_l_minus);
        } else {
            row.s_n += 1;
        }
        if v < row.min_value {
            row.min_value = v;
        }
        if v > row.max_value {
            row.max_value = v;
        }
        row.cells_seen += 1;
    }
    Ok(())
}

/// Scans a box of cell indices. Rows run along the last axis; every row is
/// folded into `out` scaled by the cell volume.
fn scan_box(ctx: &SweepCtx<'_>, ranges: &[Range<u64>]) -> Result<RawSums, RigorError> {
    let len = ctx.plan.len;
    let mut out = RawSums::zero(len);
    let mut row = RawSums::zero(len);
    let d = ranges.len();
    if d == 1 {
        scan_row(ctx, &[], ranges[0].clone(), &mut row)?;
        out.absorb_row(&row, ctx.cell_volume);
        return Ok(out);
    }
    let row_range = ranges[d - 1].clone();
    let mut prefix: Vec<u64> = ranges[..d - 1].iter().map(|r| r.start).collect();
    if ranges.iter().any(|r| r.is_empty()) {
        return Ok(out);
    }
    'outer: loop {
        scan_row(ctx, &prefix, row_range.clone(), &mut row)?;
        out.absorb_row(&row, ctx.cell_volume);
        // odometer over the leading axes, last of them fastest
        let mut axis = d - 1;
        loop {
            if axis == 0 {
                break 'outer;
            }
            axis -= 1;
            prefix[axis] += 1;
            if prefix[axis] < ranges[axis].end {
                continue 'outer;
            }
            prefix[axis] = ranges[axis].start;
        }
    }
    Ok(out)
}

fn validate_tile(spec: &GridSpec, tile: &Tile) -> Result<(), RigorError> {
    let ranges = tile.ranges();
    if ranges.len() != spec.dimension() {
        return Err(RigorError::TileDimensionMismatch {
            got: ranges.len(),
            expected: spec.dimension(),
        });
    }
    for (axis, r) in ranges.iter().enumerate() {
        if r.end > spec.cells_per_axis() || r.start > r.end {
            return Err(RigorError::TileOutOfRange {
                axis,
                start: r.start,
                end: r.end,
                cells: spec.cells_per_axis(),
            });
        }
    }
    Ok(())
}

fn check_alpha(alpha: f64) -> Result<(), RigorError> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(RigorError::NonPositiveAlpha(alpha));
    }
    Ok(())
}

/// Classifies and accumulates every cell of one tile.
///
/// `alpha` must be an upward-safe cube variation bound for `f` on the
/// grid's cells. The tile is processed plane by plane along the first
/// axis, rows along the last.
pub fn classify_and_accumulate(
    f: &TrigEigenfunction,
    spec: &GridSpec,
    tile: &Tile,
    alpha: f64,
    exponents: &[f64],
) -> Result<SignedAccumulator, RigorError> {
    check_alpha(alpha)?;
    validate_tile(spec, tile)?;
    let plan = PowerPlan::new(exponents)?;
    let evaluator = MidpointEvaluator::new(f, spec.cells_per_axis());
    let ctx = SweepCtx {
        evaluator: &evaluator,
        threshold: classification_threshold(alpha),
        plan: &plan,
        cell_volume: spec.cell_volume(),
    };
    let ranges = tile.ranges();
    let mut sums = RawSums::zero(plan.len);
    if spec.dimension() == 1 {
        sums = scan_box(&ctx, ranges)?;
    } else {
        let mut plane_box = ranges.to_vec();
        for plane in ranges[0].clone() {
            plane_box[0] = plane..plane + 1;
            let partial = scan_box(&ctx, &plane_box)?;
            sums.add_assign(&partial);
        }
    }
    Ok(SignedAccumulator { exponents: exponents.to_vec(), sums })
}

/// Runs the classified accumulation over the whole grid in parallel.
///
/// Work is distributed over whole planes of the first axis; per-plane
/// partials are folded in plane order afterwards, so the result is bitwise
/// identical for any worker count and any tile granularity. `tile_target`
/// only hints at the scheduling granularity.
pub fn sweep(
    f: &TrigEigenfunction,
    spec: &GridSpec,
    alpha: f64,
    exponents: &[f64],
    tile_target: usize,
) -> Result<SignedAccumulator, RigorError> {
    check_alpha(alpha)?;
    let plan = PowerPlan::new(exponents)?;
    spec.cell_count().ok_or(RigorError::GridTooLarge {
        cells_per_axis: spec.cells_per_axis(),
        dimension: spec.dimension(),
    })?;
    let evaluator = MidpointEvaluator::new(f, spec.cells_per_axis());
    let ctx = SweepCtx {
        evaluator: &evaluator,
        threshold: classification_threshold(alpha),
        plan: &plan,
        cell_volume: spec.cell_volume(),
    };
    let n = spec.cells_per_axis();
    let d = spec.dimension();
    let chunk = (n as usize / tile_target.max(1)).max(1);
    let full: Vec<Range<u64>> = (0..d).map(|_| 0..n).collect();
    let partials: Vec<RawSums> = (0..n)
        .into_par_iter()
        .with_min_len(chunk)
        .map(|plane| {
            let mut plane_box = full.clone();
            plane_box[0] = plane..plane + 1;
            scan_box(&ctx, &plane_box)
        })
        .collect::<Result<_, _>>()?;
    let mut sums = RawSums::zero(plan.len);
    for partial in &partials {
        sums.add_assign(partial);
    }
    Ok(SignedAccumulator { exponents: exponents.to_vec(), sums })
}

/// A certified enclosure row: `L_± ≤ ∫ψ_±^p ≤ U_±`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundsRow {
    pub p: f64,
    pub l_plus: f64,
    pub u_plus: f64,
    pub l_minus: f64,
    pub u_minus: f64,
}

/// A-priori bounds on the floating-point error of the sweep, propagated
/// with the sum/product rules `E(Q+R) = E(Q)+E(R)` and
/// `E(QR) = (Q+E(Q))(R+E(R)) − QR`, every intermediate rounded upward.
///
/// `total_bound_error ≥ N^d · per_term_error + S_N · remainder_term_error`
/// plus the explicit summation and scale charges; widening the raw sums by
/// the total turns them into true enclosures of the exact sums.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ErrorLedger {
    /// Upper bound on the unit roundoff (`2.23e-16` covers f64).
    pub machine_epsilon: f64,
    /// Bound on `E(|ψ̄(x)|)` for the table-lookup midpoint evaluation.
    pub eval_error: f64,
    /// Bound on the error of one accumulated term `ℓ^d (|ψ̄(x)|+1.1α)^p`,
    /// maximized over the exponent list.
    pub per_term_error: f64,
    /// Bound on the error of one remainder term `ℓ^d (2.2α)^p`.
    pub remainder_term_error: f64,
    /// Rounding of the row/plane/total summation hierarchy.
    pub summation_error: f64,
    /// Relative error of the stored cell volume versus the exact `N^{-d}`,
    /// plus the finalization arithmetic.
    pub scale_error: f64,
    /// Grand total; the amount by which every `U` is raised and every `L`
    /// lowered.
    pub total_bound_error: f64,
}

/// Builds the error ledger for a sweep of `f` at the given grid, variation
/// bound and exponent list, with `s_n` unclassified cells.
///
/// The evaluation recipe audited here is the table-based midpoint path:
/// the table arguments `π r / N` carry at most `9.5ε` of rounding, the
/// platform sine/cosine at most two ulps, so one table entry is within
/// `12ε` of the exact wave value; a term multiplication adds `ε/2` and the
/// term additions `ε` each at magnitude `Σ|c|`.
pub fn build_ledger(
    f: &TrigEigenfunction,
    spec: &GridSpec,
    alpha: f64,
    exponents: &[f64],
    s_n: u64,
) -> Result<ErrorLedger, RigorError> {
    check_alpha(alpha)?;
    PowerPlan::new(exponents)?;
    let eps = EPS_M;
    let d = spec.dimension();
    let n_f = spec.cells_per_axis() as f64;

    let coef_sum = f.coefficient_sup_bound();
    let n_terms = f.terms().len() as f64;
    // per-term table error 12ε + ε multiplication, plus (t−1) additions at
    // magnitude Σ|c|
    let eval_error = add_up(
        mul_up(coef_sum, 13.0 * eps),
        mul_up((n_terms - 1.0).max(0.0) * eps, coef_sum),
    )
    .next_up();

    // bound on any accumulated base: |ψ̄| + 1.1α ≤ Σ|c| + 2.2α
    let base_bound = add_up(coef_sum, mul_up(2.2, alpha));
    let vol_up = pow_up(spec.side().next_up(), d as f64);
    let rem_base = mul_up(2.2, alpha);

    let mut per_term_error = 0.0f64;
    let mut remainder_term_error = 0.0f64;
    let mut base_pow_max = 1.0f64;
    for &p in exponents {
        if !p.is_finite() || p < 0.0 {
            return Err(RigorError::InvalidExponent(p));
        }
        let bp = pow_up(base_bound, p);
        base_pow_max = base_pow_max.max(bp);
        let rel = (2.0 * p.max(1.0) + 4.0) * eps;
        let mut term = mul_up(vol_up, mul_up(bp, rel));
        if p >= 1.0 {
            // propagate the evaluation error through the power, paper style;
            // for p < 1 the classification margin absorbs it instead (the
            // derivative bound p·B^{p-1} is not available near zero bases)
            let deriv = mul_up(p, pow_up(base_bound, p - 1.0));
            term = add_up(term, mul_up(vol_up, mul_up(deriv, eval_error)));
        }
        per_term_error = per_term_error.max(term);
        let rem = mul_up(vol_up, mul_up(pow_up(rem_base, p), rel));
        remainder_term_error = remainder_term_error.max(rem);
    }

    let summation_error = mul_up((d as f64 + 1.0) * n_f, mul_up(base_pow_max, eps));
    let scale_error = mul_up((2 * d + 2) as f64 * eps, base_pow_max);

    let cells_f = spec.cell_count_f64().next_up();
    let total_bound_error = add_up(
        add_up(mul_up(cells_f, per_term_error), mul_up(s_n as f64, remainder_term_error)),
        add_up(summation_error, scale_error),
    );

    Ok(ErrorLedger {
        machine_epsilon: eps,
        eval_error,
        per_term_error,
        remainder_term_error,
        summation_error,
        scale_error,
        total_bound_error,
    })
}

/// One margin check of the ledger against its requirement.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct MarginCheck {
    pub value: f64,
    pub limit: f64,
    pub passed: bool,
}

/// The two checks that make the sweep's certificates valid: the evaluation
/// error must stay below `0.05α` (sign classification is then certain) and
/// the total bound error below `0.01`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct MarginReport {
    pub eval_error: MarginCheck,
    pub total_error: MarginCheck,
}

impl MarginReport {
    pub fn all_passed(&self) -> bool {
        self.eval_error.passed && self.total_error.passed
    }
}

/// Checks the ledger margins. `alpha` is the upward-safe variation bound;
/// the evaluation check compares against `0.05` times a certified lower
/// companion of it, so an inflated `alpha` cannot mask a failure.
pub fn check_margins(ledger: &ErrorLedger, alpha: f64) -> MarginReport {
    let alpha_low = (alpha * (1.0 - 32.0 * EPS_M)).next_down();
    let eval_limit = (0.05 * alpha_low).next_down();
    let eval = MarginCheck {
        value: ledger.eval_error,
        limit: eval_limit,
        passed: ledger.eval_error < eval_limit,
    };
    let total = MarginCheck {
        value: ledger.total_bound_error,
        limit: 0.01,
        passed: ledger.total_bound_error < 0.01,
    };
    MarginReport { eval_error: eval, total_error: total }
}

/// Turns a full-grid accumulator into certified enclosure rows:
/// `U_± = S_U,± + S_N (2.2α)^p ℓ^d` and `L_± = S_L,±`, then every row is
/// widened by the ledger total so it encloses the exact integral.
pub fn finalize_bounds(
    acc: &SignedAccumulator,
    alpha: f64,
    spec: &GridSpec,
    ledger: &ErrorLedger,
) -> Result<Vec<BoundsRow>, RigorError> {
    check_alpha(alpha)?;
    let expected = spec.cell_count().ok_or(RigorError::GridTooLarge {
        cells_per_axis: spec.cells_per_axis(),
        dimension: spec.dimension(),
    })?;
    if acc.cells_seen() != expected {
        return Err(RigorError::IncompleteCoverage { seen: acc.cells_seen(), expected });
    }
    let thr = classification_threshold(alpha);
    let rem_base = 2.0 * thr;
    let volume = spec.cell_volume();
    let s_n = acc.unclassified_cells() as f64;
    let e = ledger.total_bound_error;
    let mut rows = Vec::with_capacity(acc.exponents().len());
    for (k, &p) in acc.exponents().iter().enumerate() {
        let remainder = s_n * (Power::classify(p)?.apply(rem_base) * volume);
        let u_plus = add_up(acc.s_u_plus()[k] + remainder, e);
        let u_minus = add_up(acc.s_u_minus()[k] + remainder, e);
        let l_plus = sub_down(acc.s_l_plus()[k], e).max(0.0);
        let l_minus = sub_down(acc.s_l_minus()[k], e).max(0.0);
        debug_assert!(l_plus <= u_plus && l_minus <= u_minus);
        rows.push(BoundsRow { p, l_plus, u_plus, l_minus, u_minus });
    }
    Ok(rows)
}
