//! Matching polynomials, their real zeros, matching energy and the spectral
//! identities and inequalities relating them to average matching size.
//!
//! Zeros are isolated with certified realness: the factor `x^(n-2μ)` is
//! removed exactly, the remaining even polynomial is rewritten in `y = x²`,
//! split into square-free factors, and each factor's roots in `(0, B]` are
//! isolated by Sturm sequences and bisected until narrower than `tol²`. If
//! fewer than `μ` positive roots (with multiplicity) are found, the input is
//! rejected.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::charpoly::characteristic_polynomial;
use crate::error::{SpectralError, StatsError};
use crate::graph::Graph;
use crate::graph6::write_graph6;
use crate::poly::{isolate_roots, root_bound, square_free_decomposition, QPoly};
use crate::ratio::{rational_to_f64, ExactRatio};
use crate::stats::{average_size, matching_profile, total_count, weighted_stats, MatchingProfile};

pub const DEFAULT_ROOT_TOLERANCE: f64 = 1e-12;
pub const DEFAULT_IDENTITY_TOLERANCE: f64 = 1e-8;
pub const DEFAULT_INEQUALITY_TOLERANCE: f64 = 1e-9;

/// `Φ(G, x) = Σ_k (-1)^k m(G,k) x^(n-2k)`, coefficients ascending by degree.
#[derive(Clone, PartialEq, Eq)]
pub struct SignedPolynomial {
    coeffs: Vec<BigInt>,
}

impl SignedPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Recovers the profile from the coefficients.
    pub fn profile(&self) -> MatchingProfile {
        let n = self.degree();
        let counts = (0..=n / 2).map(|k| self.coeffs[n - 2 * k].abs().to_biguint().expect("absolute value")).collect();
        MatchingProfile::from_counts(counts)
    }

    /// `M(G, x)` at `x = 1`, i.e. the Hosoya index.
    pub fn unsigned_at_one(&self) -> BigUint {
        self.coeffs.iter().map(|c| c.abs().to_biguint().expect("absolute value")).sum()
    }

    /// Leading coefficient 1, no terms of degree `n - 2k - 1`, and the term
    /// of degree `n - 2k` has sign `(-1)^k` or vanishes.
    pub fn has_matching_shape(&self) -> bool {
        let n = self.degree();
        self.coeffs[n].is_one()
            && self.coeffs.iter().enumerate().all(|(e, c)| match (n - e) % 4 {
                0 => !c.is_negative(),
                2 => !c.is_positive(),
                _ => c.is_zero(),
            })
    }

    /// Sparse text form `1x^4 - 4x^2 + 2x^0`.
    pub fn to_sparse_text(&self) -> String {
        let mut out = String::new();
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if out.is_empty() {
                out.push_str(&format!("{c}x^{e}"));
            } else if c.is_negative() {
                out.push_str(&format!(" - {}x^{e}", -c));
            } else {
                out.push_str(&format!(" + {c}x^{e}"));
            }
        }
        out
    }

    pub fn parse_sparse_text(text: &str) -> Option<SignedPolynomial> {
        let mut terms: Vec<(usize, BigInt)> = Vec::new();
        let mut sign = BigInt::one();
        for tok in text.split_whitespace() {
            match tok {
                "+" => sign = BigInt::one(),
                "-" => sign = -BigInt::one(),
                term => {
                    let (c, e) = term.split_once("x^")?;
                    let c: BigInt = c.parse().ok()?;
                    terms.push((e.parse().ok()?, c * &sign));
                    sign = BigInt::one();
                }
            }
        }
        let deg = terms.iter().map(|t| t.0).max()?;
        let mut coeffs = vec![BigInt::zero(); deg + 1];
        for (e, c) in terms {
            coeffs[e] += c;
        }
        Some(SignedPolynomial { coeffs })
    }
}

impl fmt::Debug for SignedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sparse_text())
    }
}

impl fmt::Display for SignedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sparse_text())
    }
}

pub fn matching_polynomial(p: &MatchingProfile, n: usize) -> Result<SignedPolynomial, SpectralError> {
    let len = p.counts().len();
    if len > n / 2 + 1 {
        return Err(SpectralError::ProfileTooLong { len, n });
    }
    let mut coeffs = vec![BigInt::zero(); n + 1];
    for (k, c) in p.counts().iter().enumerate() {
        let c = BigInt::from(c.clone());
        coeffs[n - 2 * k] = if k % 2 == 0 { c } else { -c };
    }
    Ok(SignedPolynomial { coeffs })
}

/// The `n` real zeros of a matching polynomial, sorted ascending.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub roots: Vec<f64>,
    /// Bound on the distance from each reported root to the true zero.
    pub tolerance: f64,
    pub zero_count: usize,
}

pub fn real_roots(poly: &SignedPolynomial, tol: f64) -> Result<Spectrum, SpectralError> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(SpectralError::BadTolerance);
    }
    let n = poly.degree();
    if !poly.has_matching_shape() {
        return Err(SpectralError::RootsNotCertified { expected: n, found: 0 });
    }
    let profile = poly.profile();
    let mu = profile.counts().len() - 1;
    let zero_count = n - 2 * mu;
    let mut roots = vec![0.0; zero_count];
    if mu > 0 {
        // Q(y) = Σ_k (-1)^k m(k) y^(μ-k)
        let q: QPoly = (0..=mu)
            .map(|j| {
                let k = mu - j;
                let c = BigRational::from_integer(BigInt::from(profile.counts()[k].clone()));
                if k.is_multiple_of(2) {
                    c
                } else {
                    -c
                }
            })
            .collect();
        let width = BigRational::from_f64(tol * tol).expect("finite tolerance");
        let mut found = 0;
        for (factor, mult) in square_free_decomposition(&q) {
            let lo = BigRational::zero();
            let hi = root_bound(&factor);
            for iv in isolate_roots(&factor, &lo, &hi, &width) {
                let x = rational_to_f64(&iv.midpoint()).sqrt();
                for _ in 0..mult {
                    roots.push(x);
                    roots.push(-x);
                }
                found += mult;
            }
        }
        if found != mu {
            return Err(SpectralError::RootsNotCertified { expected: mu, found });
        }
    }
    roots.sort_by(|a, b| a.partial_cmp(b).expect("finite roots"));
    Ok(Spectrum { roots, tolerance: tol, zero_count })
}

pub fn graph_spectrum(g: &Graph, tol: f64) -> Result<Spectrum, SpectralError> {
    let p = matching_profile(g);
    real_roots(&matching_polynomial(&p, g.n())?, tol)
}

pub fn matching_energy(s: &Spectrum) -> f64 {
    s.roots.iter().map(|r| r.abs()).sum()
}

/// `½ Σ μ²/(μ²+1)`
pub fn av_from_spectrum(s: &Spectrum) -> f64 {
    0.5 * s.roots.iter().map(|r| r * r / (r * r + 1.0)).sum::<f64>()
}

/// `½ Σ αμ²/(αμ²+1)`
pub fn av_alpha_from_spectrum(s: &Spectrum, alpha: &BigRational) -> Result<f64, StatsError> {
    if !alpha.is_positive() {
        return Err(StatsError::NonPositiveAlpha(alpha.to_string()));
    }
    let a = rational_to_f64(alpha);
    Ok(0.5 * s.roots.iter().map(|r| a * r * r / (a * r * r + 1.0)).sum::<f64>())
}

/// `Π √(1+μ²)`, which equals the Hosoya index.
pub fn hosoya_from_spectrum(s: &Spectrum) -> f64 {
    s.roots.iter().map(|r| (1.0 + r * r).sqrt()).product()
}

/// Slack of one inequality on one graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergyReport {
    pub graph6: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub me: Option<f64>,
    pub av: ExactRatio,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
    pub bound_name: String,
    /// Right-hand side minus left-hand side; negative means violated.
    pub slack: f64,
}

impl EnergyReport {
    pub fn is_tight(&self, tol: f64) -> bool {
        self.slack.abs() <= tol
    }
}

fn g6(g: &Graph) -> String {
    write_graph6(g).unwrap_or_else(|_| format!("<n={}>", g.n()))
}

/// Grid of β values for `av ≤ β log M + (1 - β + β log β)·n/2`, the last
/// entry being the optimal `β = M^(-2/n)`.
pub fn beta_grid(m: f64, n: usize) -> Vec<(String, f64)> {
    let mut grid: Vec<(String, f64)> =
        [("1/4", 0.25), ("1/2", 0.5), ("1", 1.0), ("2", 2.0)].iter().map(|&(s, b)| (s.to_string(), b)).collect();
    grid.push(("M^(-2/n)".to_string(), (-2.0 * m.ln() / n as f64).exp()));
    grid
}

/// The Hosoya-index upper bounds on `av(G)`: `log M`, `(n/2)(1 - M^(-2/n))`
/// and the β-family on [`beta_grid`]. One report per bound.
pub fn check_count_bounds(g: &Graph) -> Vec<EnergyReport> {
    let n = g.n();
    let p = matching_profile(g);
    let av = average_size(&p);
    let av_f = av.to_f64();
    let m = total_count(&p).to_f64().expect("finite Hosoya index");
    let log_m = m.ln();
    let name = g6(g);
    let report = |bound_name: String, rhs: f64| EnergyReport {
        graph6: name.clone(),
        me: None,
        av: av.clone(),
        alpha: None,
        bound_name,
        slack: rhs - av_f,
    };
    let mut out = vec![report("log".into(), log_m)];
    if n > 0 {
        let half = n as f64 / 2.0;
        out.push(report("power".into(), half * (1.0 - (-2.0 * log_m / n as f64).exp())));
        for (label, beta) in beta_grid(m, n) {
            out.push(report(format!("beta={label}"), beta * log_m + (1.0 - beta + beta * beta.ln()) * half));
        }
    }
    out
}

/// Smallest slack among the reports.
pub fn min_slack(reports: &[EnergyReport]) -> Option<&EnergyReport> {
    reports.iter().min_by(|a, b| a.slack.total_cmp(&b.slack))
}

/// `ME(G) ≥ 4·av(G)`, or `ME(G) ≥ (4/√α)·av^α(G)` when `alpha` is given.
pub fn check_energy_bound(g: &Graph, alpha: Option<&BigRational>, tol: f64) -> Result<EnergyReport, SpectralError> {
    let p = matching_profile(g);
    let spectrum = real_roots(&matching_polynomial(&p, g.n())?, tol)?;
    Ok(energy_report(g, &p, &spectrum, alpha)?)
}

/// [`check_energy_bound`] with the profile and spectrum already at hand.
pub fn energy_report(
    g: &Graph,
    p: &MatchingProfile,
    spectrum: &Spectrum,
    alpha: Option<&BigRational>,
) -> Result<EnergyReport, StatsError> {
    let me = matching_energy(spectrum);
    let (av, factor, label) = match alpha {
        None => (average_size(p), 4.0, "energy".to_string()),
        Some(a) => {
            let w = weighted_stats(p, a)?;
            (w.av_alpha, 4.0 / rational_to_f64(a).sqrt(), format!("energy-alpha={a}"))
        }
    };
    Ok(EnergyReport {
        graph6: g6(g),
        me: Some(me),
        slack: me - factor * av.to_f64(),
        av,
        alpha: alpha.map(ToString::to_string),
        bound_name: label,
    })
}

/// Whether the matching polynomial of a forest equals the characteristic
/// polynomial of its adjacency matrix.
pub fn tree_char_poly_crosscheck(t: &Graph) -> Result<bool, SpectralError> {
    if !t.is_forest() {
        return Err(SpectralError::NotAForest);
    }
    let phi = matching_polynomial(&matching_profile(t), t.n())?;
    Ok(phi.coefficients() == characteristic_polynomial(t).as_slice())
}
