//! Trigonometric Laplace eigenfunctions on the flat torus `T^d = R^d/Z^d`:
//! finite sums of `c · sin(2π⟨k,x⟩)` and `c · cos(2π⟨k,x⟩)` whose integer
//! frequency vectors `k` share a common squared norm, so the sum is an
//! eigenfunction of the Laplacian with eigenvalue `4π²‖k‖²`.

use serde::{Deserialize, Serialize};

use crate::fp::{add_up, mul_up, sqrt_up};

#[derive(Debug, thiserror::Error)]
pub enum TrigPolyError {
    #[error("dimension must be at least 1")]
    InvalidDimension,
    #[error("an eigenfunction needs at least one wave term")]
    EmptyTerms,
    #[error("term {index}: frequency vector has length {got}, expected {expected}")]
    FrequencyLengthMismatch { index: usize, got: usize, expected: usize },
    #[error("term {index}: the zero frequency vector is not allowed")]
    ZeroFrequency { index: usize },
    #[error("term {index}: coefficient must be finite")]
    NonFiniteCoefficient { index: usize },
    #[error(
        "terms do not share a squared frequency norm: term {index} has ‖k‖² = {got}, \
         term 0 has ‖k‖² = {expected}"
    )]
    MixedFrequencyNorm { index: usize, got: i64, expected: i64 },
    #[error("point has dimension {got}, eigenfunction has dimension {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("dilation factor must be at least 1")]
    InvalidDilation,
    #[error("cube side must be positive and finite, got {0}")]
    NonPositiveSide(f64),
    #[error("unknown built-in eigenfunction name: {0:?}")]
    UnknownName(String),
}

/// Whether a wave term is a sine or a cosine of `2π⟨k,x⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WaveKind {
    #[serde(rename = "sin")]
    Sine,
    #[serde(rename = "cos")]
    Cosine,
}

/// One summand `coefficient · kind(2π⟨k,x⟩)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaveTerm {
    #[serde(rename = "coef")]
    pub coefficient: f64,
    pub kind: WaveKind,
    #[serde(rename = "k")]
    pub frequency: Vec<i64>,
}

impl WaveTerm {
    pub fn sine(coefficient: f64, frequency: Vec<i64>) -> Self {
        WaveTerm { coefficient, kind: WaveKind::Sine, frequency }
    }

    pub fn cosine(coefficient: f64, frequency: Vec<i64>) -> Self {
        WaveTerm { coefficient, kind: WaveKind::Cosine, frequency }
    }

    fn norm_sq(&self) -> i64 {
        self.frequency.iter().map(|&k| k * k).sum()
    }
}

/// A Laplace eigenfunction on `T^d` given as a finite wave sum.
///
/// All terms share the squared frequency norm, the eigenvalue is
/// `4π²‖k‖² > 0`, and the mean over the torus is exactly zero because the
/// zero frequency is excluded.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrigEigenfunction {
    dimension: usize,
    terms: Vec<WaveTerm>,
    #[serde(skip)]
    freq_norm_sq: i64,
    eigenvalue: f64,
}

/// Serialized form: `{"dimension": d, "terms": [{"coef", "kind", "k"}, ..]}`.
#[derive(Deserialize)]
struct EigenfunctionDoc {
    dimension: usize,
    terms: Vec<WaveTerm>,
}

impl TrigEigenfunction {
    pub fn new(dimension: usize, terms: Vec<WaveTerm>) -> Result<Self, TrigPolyError> {
        if dimension == 0 {
            return Err(TrigPolyError::InvalidDimension);
        }
        if terms.is_empty() {
            return Err(TrigPolyError::EmptyTerms);
        }
        for (index, term) in terms.iter().enumerate() {
            if term.frequency.len() != dimension {
                return Err(TrigPolyError::FrequencyLengthMismatch {
                    index,
                    got: term.frequency.len(),
                    expected: dimension,
                });
            }
            if term.frequency.iter().all(|&k| k == 0) {
                return Err(TrigPolyError::ZeroFrequency { index });
            }
            if !term.coefficient.is_finite() {
                return Err(TrigPolyError::NonFiniteCoefficient { index });
            }
        }
        let freq_norm_sq = terms[0].norm_sq();
        for (index, term) in terms.iter().enumerate().skip(1) {
            let got = term.norm_sq();
            if got != freq_norm_sq {
                return Err(TrigPolyError::MixedFrequencyNorm {
                    index,
                    got,
                    expected: freq_norm_sq,
                });
            }
        }
        let two_pi_sq = 4.0 * std::f64::consts::PI * std::f64::consts::PI;
        let eigenvalue = two_pi_sq * freq_norm_sq as f64;
        Ok(TrigEigenfunction { dimension, terms, freq_norm_sq, eigenvalue })
    }

    /// The built-in eigenfunction
    /// `sin(2π(x+y)) − cos(2π(y−z)) − sin(2π(x+z))` on `T³`, addressable on
    /// the command line as `paper-psi`. Its eigenvalue is `8π²`.
    pub fn paper_psi() -> Self {
        TrigEigenfunction::new(
            3,
            vec![
                WaveTerm::sine(1.0, vec![1, 1, 0]),
                WaveTerm::cosine(-1.0, vec![0, 1, -1]),
                WaveTerm::sine(-1.0, vec![1, 0, 1]),
            ],
        )
        .expect("built-in eigenfunction is valid")
    }

    /// Looks up a built-in eigenfunction by name.
    pub fn by_name(name: &str) -> Result<Self, TrigPolyError> {
        match name {
            "paper-psi" => Ok(Self::paper_psi()),
            other => Err(TrigPolyError::UnknownName(other.to_string())),
        }
    }

    pub fn from_json(json: &str) -> Result<Self, serde_json::Error> {
        let doc: EigenfunctionDoc = serde_json::from_str(json)?;
        TrigEigenfunction::new(doc.dimension, doc.terms)
            .map_err(|e| serde::de::Error::custom(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("eigenfunction serializes")
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn terms(&self) -> &[WaveTerm] {
        &self.terms
    }

    pub fn eigenvalue(&self) -> f64 {
        self.eigenvalue
    }

    pub fn frequency_norm_sq(&self) -> i64 {
        self.freq_norm_sq
    }

    /// Evaluates the wave sum at a point of `[0,1)^d`.
    ///
    /// The inner product `⟨k,x⟩` is reduced modulo 1 before multiplying by
    /// `2π`, so dilated eigenfunctions with large frequencies keep full
    /// argument accuracy.
    pub fn evaluate(&self, x: &[f64]) -> Result<f64, TrigPolyError> {
        if x.len() != self.dimension {
            return Err(TrigPolyError::DimensionMismatch {
                got: x.len(),
                expected: self.dimension,
            });
        }
        let mut acc = 0.0f64;
        for term in &self.terms {
            let mut s = 0.0f64;
            for (&k, &xi) in term.frequency.iter().zip(x) {
                s += k as f64 * xi;
            }
            let frac = s - s.floor();
            let angle = std::f64::consts::TAU * frac;
            let wave = match term.kind {
                WaveKind::Sine => angle.sin(),
                WaveKind::Cosine => angle.cos(),
            };
            acc += term.coefficient * wave;
        }
        Ok(acc)
    }

    /// The rescaled eigenfunction `x ↦ f(n·x)`: every frequency vector is
    /// multiplied by `n` and the eigenvalue scales by `n²`.
    pub fn dilate(&self, n: u64) -> Result<Self, TrigPolyError> {
        if n == 0 {
            return Err(TrigPolyError::InvalidDilation);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| WaveTerm {
                coefficient: t.coefficient,
                kind: t.kind,
                frequency: t.frequency.iter().map(|&k| k * n as i64).collect(),
            })
            .collect();
        TrigEigenfunction::new(self.dimension, terms)
    }

    /// A certified upper bound on `sup |∇f|` by the triangle inequality:
    /// `2π · Σ |c_i| ‖k_i‖₂`, computed with upward rounding.
    pub fn gradient_norm_bound(&self) -> LipschitzBound {
        let mut sum = 0.0f64;
        for term in &self.terms {
            let norm = sqrt_up(term.norm_sq() as f64);
            sum = add_up(sum, mul_up(term.coefficient.abs(), norm));
        }
        // TAU underestimates 2π by under an ulp; two extra ulps make the
        // product an upper bound for the exact 2π · Σ|c|‖k‖.
        let value = mul_up(std::f64::consts::TAU, sum).next_up().next_up();
        LipschitzBound { value, provenance: BoundProvenance::GenericTriangle }
    }

    /// The crude certified sup-norm bound `‖f‖_∞ ≤ Σ |c_i|`.
    pub fn coefficient_sup_bound(&self) -> f64 {
        let mut sum = 0.0f64;
        for term in &self.terms {
            sum = add_up(sum, term.coefficient.abs());
        }
        sum
    }
}

/// Where a gradient-norm bound came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundProvenance {
    GenericTriangle,
    UserSupplied,
}

/// A certified upper bound on the gradient norm (function value per unit
/// length), used to bound how far the function can move within one grid
/// cube.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LipschitzBound {
    pub value: f64,
    pub provenance: BoundProvenance,
}

impl LipschitzBound {
    /// Installs a caller-supplied gradient bound. The caller is responsible
    /// for its validity; the provenance records that.
    pub fn user_supplied(value: f64) -> Self {
        LipschitzBound { value, provenance: BoundProvenance::UserSupplied }
    }
}

/// Upward-safe cube variation bound: a function with gradient bound `L`
/// deviates from its value at the midpoint of a cube of side `ℓ` by at most
/// `α = L · √d · ℓ / 2` (half-diagonal times the Lipschitz constant).
pub fn cube_variation_bound(
    lipschitz: &LipschitzBound,
    side: f64,
    dimension: usize,
) -> Result<f64, TrigPolyError> {
    if !(side > 0.0 && side.is_finite()) {
        return Err(TrigPolyError::NonPositiveSide(side));
    }
    let half_diag = mul_up(sqrt_up(dimension as f64), side) * 0.5;
    Ok(mul_up(lipschitz.value, half_diag))
}

/// Midpoint evaluator for uniform grids: on the grid of `n` cells per axis
/// the midpoints are `(2i+1)/(2n)`, so `⟨k,x⟩ = m/(2n)` with the integer
/// `m = Σ k_j (2 i_j + 1)`. Reducing `m` modulo `2n` is exact, and the wave
/// values are lookups into tables of `sin(π r / n)` and `cos(π r / n)` for
/// `r ∈ [0, 2n)`. Evaluation error is therefore independent of the
/// frequency size, which keeps the error ledger valid for dilated
/// eigenfunctions.
pub struct MidpointEvaluator {
    cells_per_axis: u64,
    modulus: i64,
    sin_table: Vec<f64>,
    cos_table: Vec<f64>,
    terms: Vec<ReducedTerm>,
}

struct ReducedTerm {
    coefficient: f64,
    is_sine: bool,
    /// Frequencies reduced to `[0, 2n)`.
    freq_mod: Vec<i64>,
}

/// Per-row scanning state: walks the midpoints of one run along the last
/// axis, advancing each term's table index by a fixed stride modulo `2n`.
pub struct RowScan<'a> {
    states: Vec<TermScan<'a>>,
    modulus: i64,
}

struct TermScan<'a> {
    table: &'a [f64],
    coefficient: f64,
    index: i64,
    stride: i64,
}

impl MidpointEvaluator {
    pub fn new(f: &TrigEigenfunction, cells_per_axis: u64) -> Self {
        assert!(cells_per_axis >= 1, "grid needs at least one cell per axis");
        let n = cells_per_axis;
        let modulus = 2 * n as i64;
        let nf = n as f64;
        let mut sin_table = Vec::with_capacity(modulus as usize);
        let mut cos_table = Vec::with_capacity(modulus as usize);
        for r in 0..modulus {
            let angle = std::f64::consts::PI * r as f64 / nf;
            sin_table.push(angle.sin());
            cos_table.push(angle.cos());
        }
        let terms = f
            .terms()
            .iter()
            .map(|t| ReducedTerm {
                coefficient: t.coefficient,
                is_sine: t.kind == WaveKind::Sine,
                freq_mod: t.frequency.iter().map(|&k| k.rem_euclid(modulus)).collect(),
            })
            .collect();
        MidpointEvaluator { cells_per_axis: n, modulus, sin_table, cos_table, terms }
    }

    pub fn cells_per_axis(&self) -> u64 {
        self.cells_per_axis
    }

    /// Value at the midpoint of the cell with the given index vector.
    pub fn value_at(&self, index: &[u64]) -> f64 {
        let mut acc = 0.0f64;
        for term in &self.terms {
            let mut m = 0i64;
            for (&k, &i) in term.freq_mod.iter().zip(index) {
                m = (m + k * (2 * i as i64 + 1)) % self.modulus;
            }
            let table = if term.is_sine { &self.sin_table } else { &self.cos_table };
            acc += term.coefficient * table[m as usize];
        }
        acc
    }

    /// Prepares a scan over the midpoints `(prefix, i)` for `i` starting at
    /// `row_start` on the last axis. `prefix` holds the indices of all
    /// earlier axes (empty in dimension 1, where the scan runs along the
    /// only axis).
    pub fn row_scan(&self, prefix: &[u64], row_start: u64) -> RowScan<'_> {
        let mut states = Vec::with_capacity(self.terms.len());
        for term in &self.terms {
            let last = *term.freq_mod.last().expect("terms are never empty");
            let mut m = (last * (2 * row_start as i64 + 1)) % self.modulus;
            let lead = term.freq_mod.len() - 1;
            for (&k, &i) in term.freq_mod[..lead].iter().zip(prefix) {
                m = (m + k * (2 * i as i64 + 1)) % self.modulus;
            }
            let table: &[f64] = if term.is_sine { &self.sin_table } else { &self.cos_table };
            states.push(TermScan {
                table,
                coefficient: term.coefficient,
                index: m,
                stride: (2 * last) % self.modulus,
            });
        }
        RowScan { states, modulus: self.modulus }
    }
}

impl RowScan<'_> {
    /// Returns the value at the current midpoint and advances to the next
    /// one along the row.
    #[inline]
    pub fn next_value(&mut self) -> f64 {
        let mut acc = 0.0f64;
        for st in &mut self.states {
            acc += st.coefficient * st.table[st.index as usize];
            st.index += st.stride;
            if st.index >= self.modulus {
                st.index -= self.modulus;
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn test_rng(seed: u64) -> rand_chacha::ChaCha8Rng {
        rand_chacha::ChaCha8Rng::seed_from_u64(seed)
    }

    const SIX_SQRT2_PI: f64 = 26.6572976289502;

    #[test]
    fn paper_psi_shape() {
        let psi = TrigEigenfunction::paper_psi();
        assert_eq!(psi.dimension(), 3);
        assert_eq!(psi.terms().len(), 3);
        assert_eq!(psi.frequency_norm_sq(), 2);
        let expected = 8.0 * std::f64::consts::PI * std::f64::consts::PI;
        assert!((psi.eigenvalue() - expected).abs() < 1e-12);
        for term in psi.terms() {
            assert_eq!(term.norm_sq(), 2);
        }
    }

    #[test]
    fn paper_psi_point_values() {
        let psi = TrigEigenfunction::paper_psi();
        assert_eq!(psi.evaluate(&[0.0, 0.0, 0.0]).unwrap(), -1.0);
        assert_eq!(psi.evaluate(&[0.25, 0.0, 0.0]).unwrap(), -1.0);
        // the two sine terms cancel on the diagonal and cos(0) = 1
        let mut rng = test_rng(7);
        for _ in 0..10_000 {
            let t: f64 = rng.random();
            let v = psi.evaluate(&[t, t, t]).unwrap();
            assert!((v + 1.0).abs() <= 4.0 * f64::EPSILON, "psi({t},{t},{t}) = {v}");
        }
    }

    #[test]
    fn evaluate_rejects_wrong_dimension() {
        let psi = TrigEigenfunction::paper_psi();
        assert!(matches!(
            psi.evaluate(&[0.1, 0.2]),
            Err(TrigPolyError::DimensionMismatch { got: 2, expected: 3 })
        ));
    }

    #[test]
    fn constructor_validation() {
        assert!(matches!(
            TrigEigenfunction::new(3, vec![]),
            Err(TrigPolyError::EmptyTerms)
        ));
        assert!(matches!(
            TrigEigenfunction::new(3, vec![WaveTerm::sine(1.0, vec![0, 0, 0])]),
            Err(TrigPolyError::ZeroFrequency { index: 0 })
        ));
        assert!(matches!(
            TrigEigenfunction::new(
                3,
                vec![WaveTerm::sine(1.0, vec![1, 1, 0]), WaveTerm::sine(1.0, vec![2, 0, 0])]
            ),
            Err(TrigPolyError::MixedFrequencyNorm { index: 1, got: 4, expected: 2 })
        ));
        assert!(matches!(
            TrigEigenfunction::new(2, vec![WaveTerm::sine(1.0, vec![1, 0, 0])]),
            Err(TrigPolyError::FrequencyLengthMismatch { .. })
        ));
        assert!(matches!(
            TrigEigenfunction::new(1, vec![WaveTerm::sine(f64::NAN, vec![1])]),
            Err(TrigPolyError::NonFiniteCoefficient { index: 0 })
        ));
    }

    #[test]
    fn generic_gradient_bound_value() {
        let psi = TrigEigenfunction::paper_psi();
        let bound = psi.gradient_norm_bound();
        assert_eq!(bound.provenance, BoundProvenance::GenericTriangle);
        // 2π · 3 · √2, never below the exact value
        assert!((bound.value - SIX_SQRT2_PI).abs() < 1e-12);
        assert!(bound.value >= SIX_SQRT2_PI);
    }

    #[test]
    fn gradient_bound_single_wave() {
        let f = TrigEigenfunction::new(1, vec![WaveTerm::sine(1.0, vec![1])]).unwrap();
        let bound = f.gradient_norm_bound();
        assert!((bound.value - std::f64::consts::TAU).abs() < 1e-14);
    }

    #[test]
    fn gradient_bound_dominates_sampled_gradients() {
        let psi = TrigEigenfunction::paper_psi();
        let bound = psi.gradient_norm_bound().value;
        let h = 1e-6;
        let mut rng = test_rng(11);
        for _ in 0..100_000 {
            let x: [f64; 3] = std::array::from_fn(|_| rng.random());
            let mut norm_sq = 0.0;
            for axis in 0..3 {
                let mut hi = x;
                let mut lo = x;
                hi[axis] += h;
                lo[axis] -= h;
                let d = (psi.evaluate(&hi).unwrap() - psi.evaluate(&lo).unwrap()) / (2.0 * h);
                norm_sq += d * d;
            }
            assert!(norm_sq.sqrt() <= bound + 1e-3);
        }
    }

    #[test]
    fn user_supplied_bound_is_recorded() {
        let b = LipschitzBound::user_supplied(6.0 * std::f64::consts::PI);
        assert_eq!(b.provenance, BoundProvenance::UserSupplied);
        assert!((b.value - 18.84955592153876).abs() < 1e-12);
    }

    #[test]
    fn cube_variation_bound_values() {
        // paper-style bound at n = 1500: α = 3π√3/1500
        let lip = LipschitzBound::user_supplied(6.0 * std::f64::consts::PI);
        let alpha = cube_variation_bound(&lip, 1.0 / 1500.0, 3).unwrap();
        assert!((alpha - 0.0108828).abs() < 1e-6);
        let exact = 3.0 * std::f64::consts::PI * 3.0f64.sqrt() / 1500.0;
        assert!(alpha >= exact - 1e-18);
        assert!((alpha - exact).abs() < 1e-15);

        // a unit Lipschitz constant over an interval of length 2 reaches 1
        let unit = LipschitzBound::user_supplied(1.0);
        let a1 = cube_variation_bound(&unit, 2.0, 1).unwrap();
        assert!((a1 - 1.0).abs() < 1e-15);

        // linear in the side length
        let a300 = cube_variation_bound(&lip, 1.0 / 300.0, 3).unwrap();
        assert!((a300 / alpha - 5.0).abs() < 1e-12);

        assert!(matches!(
            cube_variation_bound(&lip, 0.0, 3),
            Err(TrigPolyError::NonPositiveSide(_))
        ));
    }

    #[test]
    fn dilation_scales_frequencies_and_eigenvalue() {
        let psi = TrigEigenfunction::paper_psi();
        assert_eq!(psi.dilate(1).unwrap(), psi);
        let d2 = psi.dilate(2).unwrap();
        let expected = 32.0 * std::f64::consts::PI * std::f64::consts::PI;
        assert!((d2.eigenvalue() - expected).abs() < 1e-10);
        assert_eq!(d2.terms()[0].frequency, vec![2, 2, 0]);
        assert_eq!(d2.coefficient_sup_bound(), psi.coefficient_sup_bound());
    }

    #[test]
    fn dilation_evaluates_as_scaled_argument() {
        let psi = TrigEigenfunction::paper_psi();
        let d3 = psi.dilate(3).unwrap();
        let mut rng = test_rng(13);
        for _ in 0..10_000 {
            let x: [f64; 3] = std::array::from_fn(|_| rng.random());
            let scaled: Vec<f64> = x.iter().map(|&v| (3.0 * v).fract()).collect();
            let a = d3.evaluate(&x).unwrap();
            let b = psi.evaluate(&scaled).unwrap();
            assert!((a - b).abs() < 1e-12, "dilation mismatch: {a} vs {b}");
        }
    }

    #[test]
    fn coefficient_sup_bound_values() {
        let psi = TrigEigenfunction::paper_psi();
        assert!((psi.coefficient_sup_bound() - 3.0).abs() < 1e-15);
        let f = TrigEigenfunction::new(1, vec![WaveTerm::cosine(2.0, vec![1])]).unwrap();
        assert!((f.coefficient_sup_bound() - 2.0).abs() < 1e-15);
        for n in [1u64, 5, 17] {
            let d = psi.dilate(n).unwrap();
            assert!((d.coefficient_sup_bound() - 3.0).abs() < 1e-15);
        }
    }

    #[test]
    fn json_round_trip_and_builtin_name() {
        let psi = TrigEigenfunction::paper_psi();
        let json = psi.to_json();
        let parsed = TrigEigenfunction::from_json(&json).unwrap();
        assert_eq!(parsed, psi);
        assert_eq!(TrigEigenfunction::by_name("paper-psi").unwrap(), psi);
        assert!(TrigEigenfunction::by_name("nope").is_err());

        let doc = r#"{"dimension": 2, "terms": [{"coef": 0.5, "kind": "cos", "k": [3, -4]}]}"#;
        let f = TrigEigenfunction::from_json(doc).unwrap();
        assert_eq!(f.dimension(), 2);
        assert_eq!(f.frequency_norm_sq(), 25);

        // invalid documents are rejected with a message
        let bad = r#"{"dimension": 2, "terms": [{"coef": 1.0, "kind": "sin", "k": [0, 0]}]}"#;
        assert!(TrigEigenfunction::from_json(bad).is_err());
    }

    #[test]
    fn midpoint_evaluator_matches_direct_evaluation() {
        let psi = TrigEigenfunction::paper_psi();
        let n = 17u64;
        let ev = MidpointEvaluator::new(&psi, n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let x = [
                        (2 * i + 1) as f64 / (2 * n) as f64,
                        (2 * j + 1) as f64 / (2 * n) as f64,
                        (2 * k + 1) as f64 / (2 * n) as f64,
                    ];
                    let direct = psi.evaluate(&x).unwrap();
                    let table = ev.value_at(&[i, j, k]);
                    assert!(
                        (direct - table).abs() < 1e-12,
                        "mismatch at {i},{j},{k}: {direct} vs {table}"
                    );
                }
            }
        }
    }

    #[test]
    fn row_scan_agrees_with_value_at() {
        let psi = TrigEigenfunction::paper_psi();
        let ev = MidpointEvaluator::new(&psi, 31);
        let mut scan = ev.row_scan(&[4, 17], 3);
        for k in 3..31 {
            let expected = ev.value_at(&[4, 17, k]);
            let got = scan.next_value();
            assert_eq!(got, expected, "row scan diverged at k = {k}");
        }
    }

    #[test]
    fn row_scan_handles_dilated_frequencies() {
        let psi = TrigEigenfunction::paper_psi().dilate(7).unwrap();
        let n = 23u64;
        let ev = MidpointEvaluator::new(&psi, n);
        let mut scan = ev.row_scan(&[1, 2], 0);
        for k in 0..n {
            assert_eq!(scan.next_value(), ev.value_at(&[1, 2, k]));
        }
    }

    #[test]
    fn midpoint_evaluator_diagonal_cell_is_minus_one() {
        // the cell (0,0,0) has its midpoint on the diagonal, where the two
        // sine terms are the same table entry and cancel exactly
        let psi = TrigEigenfunction::paper_psi();
        let ev = MidpointEvaluator::new(&psi, 1500);
        assert_eq!(ev.value_at(&[0, 0, 0]), -1.0);
    }
}
