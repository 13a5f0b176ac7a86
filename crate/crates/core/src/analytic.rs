//! Local harmonic analysis on `Hom(Q_p^*, G)`: the duality pairing with
//! `Q_p^* ⊗ Ĝ`, local Fourier transforms of `Φ_G^{-s}`, their closed forms by
//! kernel, the leading local factors at `s = 1/α`, and log-log exponent fits.

use std::f64::consts::PI;

use num::{BigUint, Complex, Rational64, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::groups::{group_invariants, Character, FinAbGroup, GroupElement};
use crate::localdata::{enumerate_local_components, local_disc_exponent, LocalComponent};

pub type C64 = Complex<f64>;

/// `Σ u_i ⊗ η_i` with rational `u_i`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PairingElement {
    pub terms: Vec<(Rational64, Character)>,
}

impl PairingElement {
    pub fn new(terms: Vec<(Rational64, Character)>) -> Result<Self> {
        if terms.iter().any(|(u, _)| u.is_zero()) {
            return Err(Error::ZeroNumerator);
        }
        Ok(PairingElement { terms })
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    /// `u ⊗ η` for an integer `u`.
    pub fn single(u: i64, eta: Character) -> Result<Self> {
        Self::new(vec![(Rational64::from_integer(u), eta)])
    }

    /// `Σ v_p(u_i) η_i`: zero iff the localisation at `p` lies in `Z_p^* ⊗ Ĝ`.
    pub fn valuation_part(&self, g: &FinAbGroup, p: u64) -> Character {
        let mut acc = vec![0u64; g.rank()];
        for (u, eta) in &self.terms {
            let v = rational_valuation(u, p);
            for (i, (a, c)) in acc.iter_mut().zip(&eta.coords).enumerate() {
                let n = g.factors()[i] as i64;
                *a = ((*a as i64 + v * *c as i64).rem_euclid(n)) as u64;
            }
        }
        Character { coords: acc }
    }

    pub fn is_unit_at(&self, g: &FinAbGroup, p: u64) -> bool {
        self.valuation_part(g, p).coords.iter().all(|&c| c == 0)
    }
}

fn int_valuation(n: i64, p: u64) -> i64 {
    arith::valuation(n.unsigned_abs(), p) as i64
}

fn rational_valuation(u: &Rational64, p: u64) -> i64 {
    int_valuation(*u.numer(), p) - int_valuation(*u.denom(), p)
}

/// A character of `Q_p^*`: its restriction to the units and the image of `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalCharacterFull {
    pub component: LocalComponent,
    pub frob_image: GroupElement,
}

impl LocalCharacterFull {
    pub fn p(&self) -> u64 {
        self.component.p()
    }

    /// `χ(u)` for a nonzero rational `u`.
    pub fn value(&self, g: &FinAbGroup, u: &Rational64) -> Result<GroupElement> {
        if u.is_zero() {
            return Err(Error::ZeroNumerator);
        }
        let p = self.p();
        let v = rational_valuation(u, p);
        let strip = |n: i64| -> i64 {
            let mut n = n;
            while n % p as i64 == 0 {
                n /= p as i64;
            }
            n
        };
        let num = self.component.evaluate(g, strip(*u.numer()))?;
        let den = self.component.evaluate(g, strip(*u.denom()))?;
        let unit = g.sub(&num, &den);
        let f = g.scale(v.rem_euclid(g.exponent() as i64) as u64, &self.frob_image);
        Ok(g.add(&unit, &f))
    }

    /// `Φ_G` of this character: `p^{Σ_ψ c(ψ∘χ)}`. Independent of the
    /// uniformiser image.
    pub fn phi(&self, g: &FinAbGroup) -> u64 {
        self.p().pow(local_disc_exponent(g, &self.component) as u32)
    }
}

/// All of `Hom(Q_p^*, G)`: every unit component with every uniformiser image.
pub fn local_characters(g: &FinAbGroup, p: u64) -> Vec<LocalCharacterFull> {
    let comps = enumerate_local_components(g, p);
    let mut out = Vec::with_capacity(comps.len() * g.order() as usize);
    for c in comps {
        for f in g.elements() {
            out.push(LocalCharacterFull { component: c.clone(), frob_image: f });
        }
    }
    out
}

fn unit_circle(frac: f64) -> C64 {
    C64::from_polar(1.0, 2.0 * PI * frac)
}

/// Fraction in `[0, 1)` with `⟨χ, x⟩ = exp(2πi·frac)`.
fn pairing_fraction(g: &FinAbGroup, chi: &LocalCharacterFull, x: &PairingElement) -> Result<f64> {
    let e = g.exponent();
    let mut total = 0u64;
    for (u, eta) in &x.terms {
        total = (total + g.pair(eta, &chi.value(g, u)?)) % e;
    }
    Ok(total as f64 / e as f64)
}

/// `⟨χ, x⟩ = Π exp(2πi η_i(χ(u_i)))`.
pub fn pairing(g: &FinAbGroup, chi: &LocalCharacterFull, x: &PairingElement) -> Result<C64> {
    Ok(unit_circle(pairing_fraction(g, chi, x)?))
}

fn p_pow_neg(p: u64, exponent: f64, s: C64) -> C64 {
    (-s * exponent * (p as f64).ln()).exp()
}

/// `(1/|G|) Σ_{χ ∈ Hom(Q_p^*, G)} f(χ) ⟨χ, x⟩ Φ_G(χ)^{-s}`.
pub fn local_transform<F>(g: &FinAbGroup, p: u64, x: &PairingElement, s: C64, f: F) -> Result<C64>
where
    F: Fn(&LocalCharacterFull) -> C64,
{
    let mut total = C64::zero();
    for chi in local_characters(g, p) {
        let e = local_disc_exponent(g, &chi.component) as f64;
        total += f(&chi) * pairing(g, &chi, x)? * p_pow_neg(p, e, s);
    }
    Ok(total / g.order() as f64)
}

/// The same transform grouped by kernels: for `p ∤ |G|` every unit character
/// factors through `F_p^*`, its kernel is the `m`-th powers for the order `m`
/// of its image, and `Φ_G = p^{|G|(1 - 1/m)}`. Unramified twists are summed
/// into the averages `τ_f(χ, x)`.
pub fn lemma_3_3_closed_form<F>(g: &FinAbGroup, p: u64, x: &PairingElement, s: C64, f: F) -> Result<C64>
where
    F: Fn(&LocalCharacterFull) -> C64,
{
    arith::require_prime(p)?;
    if g.order() % p == 0 {
        return Err(Error::Precondition(format!("p = {p} divides |G| = {}", g.order())));
    }
    let n = g.order() as f64;
    let d = arith::gcd(g.exponent(), p - 1);
    let zero = g.zero();
    let tau = |comp: &LocalComponent| -> Result<C64> {
        let mut acc = C64::zero();
        for frob in g.elements() {
            let psi = LocalCharacterFull { component: LocalComponent::trivial(g, p), frob_image: frob.clone() };
            let chi_psi = LocalCharacterFull { component: comp.clone(), frob_image: frob };
            acc += f(&chi_psi) * pairing(g, &psi, x)?;
        }
        Ok(acc / n)
    };
    let mut total = C64::zero();
    for m in arith::divisors(d) {
        let mut inner = C64::zero();
        for comp in enumerate_local_components(g, p) {
            let order = comp.gamma().map_or(1, |gamma| g.element_order(gamma));
            if order != m {
                continue;
            }
            let chi = LocalCharacterFull { component: comp.clone(), frob_image: zero.clone() };
            inner += pairing(g, &chi, x)? * tau(&comp)?;
        }
        total += inner * p_pow_neg(p, n * (1.0 - 1.0 / m as f64), s);
    }
    Ok(total)
}

/// The local factor at `s = 1/α` for `f ≡ 1` and `p ∤ |G|`:
/// `1 + (Q^β - 1)/p` if `p ≡ 1 mod Q` and `x` is a `Q`-th power unit class,
/// `1 - 1/p` if `p ≡ 1 mod Q` and `x` is another unit class, `1` if
/// `p ≢ 1 mod Q`, and `0` if `x` is not a unit class.
pub fn lemma_4_8_values(g: &FinAbGroup, p: u64, x: &PairingElement) -> Result<num::rational::Ratio<BigUint>> {
    use num::rational::Ratio;
    arith::require_prime(p)?;
    if g.order() % p == 0 {
        return Err(Error::Precondition(format!("p = {p} divides |G| = {}", g.order())));
    }
    let inv = group_invariants(g)?;
    let one = Ratio::from_integer(BigUint::from(1u32));
    let over_p = |k: u64| Ratio::new(BigUint::from(k), BigUint::from(p));
    if !x.is_unit_at(g, p) {
        return Ok(Ratio::from_integer(BigUint::zero()));
    }
    if (p - 1) % inv.q != 0 {
        return Ok(one);
    }
    // x is a Q-th power class iff it pairs trivially with every unit
    // character killed by Q
    let q_power = enumerate_local_components(g, p)
        .into_iter()
        .filter(|c| c.gamma().is_some_and(|gamma| inv.q % g.element_order(gamma) == 0))
        .map(|c| LocalCharacterFull { component: c, frob_image: g.zero() })
        .try_fold(true, |ok, chi| Ok::<_, Error>(ok && pairing_fraction(g, &chi, x)? == 0.0))?;
    Ok(if q_power {
        one + over_p(inv.phi_q)
    } else {
        one - over_p(1)
    })
}

/// Coefficients `(a, c)` of `a + c·p^{-αs}` through the transform values at
/// two real points, for `f ≡ 1`. For elementary abelian `G` and `p ≡ 1 mod Q`
/// the transform has exactly this shape.
pub fn leading_coefficient(g: &FinAbGroup, p: u64, x: &PairingElement, s1: f64, s2: f64) -> Result<(f64, f64)> {
    let alpha = group_invariants(g)?.alpha as f64;
    let f1 = local_transform(g, p, x, C64::new(s1, 0.0), |_| C64::new(1.0, 0.0))?.re;
    let f2 = local_transform(g, p, x, C64::new(s2, 0.0), |_| C64::new(1.0, 0.0))?.re;
    let t1 = (p as f64).powf(-alpha * s1);
    let t2 = (p as f64).powf(-alpha * s2);
    let c = (f1 - f2) / (t1 - t2);
    Ok((f1 - c * t1, c))
}

#[derive(Clone, Debug, PartialEq)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    /// `N / (B^{1/α} (log B)^{ν-1})` at each point.
    pub c_estimates: Vec<f64>,
}

/// Least-squares slope of `log N` against `log B`.
pub fn asymptotic_fit(counts: &[(f64, f64)], alpha: f64, nu: f64) -> Result<FitResult> {
    if counts.len() < 3 {
        return Err(Error::TooFewPoints(counts.len()));
    }
    if counts.windows(2).any(|w| w[1].0 <= w[0].0) {
        return Err(Error::Precondition("bounds must increase".into()));
    }
    if counts.iter().any(|&(b, n)| b <= 1.0 || n <= 0.0) {
        return Err(Error::Precondition("need B > 1 and N > 0".into()));
    }
    let xs: Vec<f64> = counts.iter().map(|c| c.0.ln()).collect();
    let ys: Vec<f64> = counts.iter().map(|c| c.1.ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    let c_estimates = counts
        .iter()
        .map(|&(b, n)| n / (b.powf(1.0 / alpha) * b.ln().powf(nu - 1.0)))
        .collect();
    Ok(FitResult { slope, intercept: my - slope * mx, c_estimates })
}

/// Maximum deviations over the standard identity grid.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport {
    pub closed_form_deviation: f64,
    pub closed_form_cases: usize,
    pub vanishing_deviation: f64,
    pub vanishing_cases: usize,
    pub leading_coefficient_deviation: f64,
    pub leading_coefficient_cases: usize,
}

/// Test functions on `Hom(Q_p^*, G)`: constant, a ramification cutoff that is
/// invariant under unramified twists, and a weight that is not.
fn test_functions(g: &FinAbGroup) -> Vec<(bool, Box<dyn Fn(&LocalCharacterFull) -> C64 + '_>)> {
    vec![
        (true, Box::new(|_: &LocalCharacterFull| C64::new(1.0, 0.0))),
        (
            true,
            Box::new(|c: &LocalCharacterFull| {
                C64::new(if c.component.inertia(g).order() <= 2 { 1.0 } else { 0.25 }, 0.0)
            }),
        ),
        (
            false,
            Box::new(|c: &LocalCharacterFull| {
                C64::new(1.0 + g.encode(&c.frob_image) as f64, 0.5 * c.component.level() as f64)
            }),
        ),
    ]
}

/// Evaluates the closed form against the direct sum for
/// `G ∈ {Z/2, (Z/2)², Z/3}`, `p ∈ {5, 7, 13}`, `x` trivial, a unit class and a
/// uniformiser class, on four values of `s`; the vanishing for
/// twist-invariant `f` at non-unit `x`; and the leading coefficients for
/// `(Z/2)²` and `(Z/3)²` at `p ≤ 100`, `p ≡ 1 mod Q`.
pub fn identity_grid() -> Result<IdentityReport> {
    let mut r = IdentityReport {
        closed_form_deviation: 0.0,
        closed_form_cases: 0,
        vanishing_deviation: 0.0,
        vanishing_cases: 0,
        leading_coefficient_deviation: 0.0,
        leading_coefficient_cases: 0,
    };
    let grid_s = [C64::new(0.3, 0.0), C64::new(0.5, 1.0), C64::new(1.0, 0.0), C64::new(2.0, -0.7)];
    for gs in ["2", "2,2", "3"] {
        let g: FinAbGroup = gs.parse()?;
        let eta = Character { coords: g.basis(0).coords };
        for p in [5u64, 7, 13] {
            let xs = [
                (PairingElement::trivial(), true),
                (PairingElement::single(arith::primitive_root(p) as i64, eta.clone())?, true),
                (PairingElement::single(p as i64, eta.clone())?, false),
            ];
            for (x, unit) in &xs {
                for (invariant, f) in test_functions(&g) {
                    for &s in &grid_s {
                        let direct = local_transform(&g, p, x, s, &f)?;
                        let closed = lemma_3_3_closed_form(&g, p, x, s, &f)?;
                        r.closed_form_deviation = r.closed_form_deviation.max((direct - closed).norm());
                        r.closed_form_cases += 1;
                        if invariant && !unit {
                            r.vanishing_deviation = r.vanishing_deviation.max(direct.norm());
                            r.vanishing_cases += 1;
                        }
                    }
                }
            }
        }
    }
    for (gs, q, phi_q) in [("2,2", 2u64, 3.0), ("3,3", 3, 8.0)] {
        let g: FinAbGroup = gs.parse()?;
        let eta = Character { coords: g.basis(0).coords };
        for p in arith::primes_up_to(100) {
            if p % q != 1 || g.order() % p == 0 {
                continue;
            }
            let (_, c) = leading_coefficient(&g, p, &PairingElement::trivial(), 0.5, 1.0)?;
            r.leading_coefficient_deviation = r.leading_coefficient_deviation.max((c - phi_q).abs());
            let x = PairingElement::single(arith::primitive_root(p) as i64, eta.clone())?;
            let (_, c) = leading_coefficient(&g, p, &x, 0.5, 1.0)?;
            r.leading_coefficient_deviation = r.leading_coefficient_deviation.max((c + 1.0).abs());
            r.leading_coefficient_cases += 2;
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> FinAbGroup {
        s.parse().unwrap()
    }

    fn one(_: &LocalCharacterFull) -> C64 {
        C64::new(1.0, 0.0)
    }

    #[test]
    fn pairing_examples() {
        let z2 = g("2");
        let eta = Character { coords: vec![1] };
        let chi = LocalCharacterFull {
            component: LocalComponent::odd(&z2, 5, GroupElement::new(vec![1])).unwrap(),
            frob_image: z2.zero(),
        };
        let x = PairingElement::single(2, eta.clone()).unwrap();
        assert!((pairing(&z2, &chi, &x).unwrap() - C64::new(-1.0, 0.0)).norm() < 1e-12);
        assert_eq!(pairing(&z2, &chi, &PairingElement::trivial()).unwrap(), C64::new(1.0, 0.0));
        assert!(PairingElement::single(0, eta).is_err());
    }

    #[test]
    fn transform_examples() {
        let s = C64::new(0.7, 0.2);
        let v = local_transform(&g("2"), 5, &PairingElement::trivial(), s, one).unwrap();
        assert!((v - (1.0 + p_pow_neg(5, 1.0, s))).norm() < 1e-12);
        let v = local_transform(&g("2,2"), 5, &PairingElement::trivial(), C64::new(0.4, 0.0), one).unwrap();
        assert!((v.re - (1.0 + 3.0 * 5f64.powf(-0.8))).abs() < 1e-12);
        let v = lemma_3_3_closed_form(&g("3"), 5, &PairingElement::trivial(), s, one).unwrap();
        assert!((v - C64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(lemma_3_3_closed_form(&g("2"), 2, &PairingElement::trivial(), s, one).is_err());
        // twisting by the uniformizer flips the sign on half of each kernel class
        let x = PairingElement::single(5, Character { coords: vec![1] }).unwrap();
        assert!(local_transform(&g("2"), 5, &x, s, one).unwrap().norm() < 1e-12);
        assert!(lemma_3_3_closed_form(&g("2"), 5, &x, s, one).unwrap().norm() < 1e-12);
    }

    #[test]
    fn lemma_4_8_examples() {
        use num::rational::Ratio;
        let v4 = g("2,2");
        let r = |a: u32, b: u32| Ratio::new(BigUint::from(a), BigUint::from(b));
        assert_eq!(lemma_4_8_values(&v4, 5, &PairingElement::trivial()).unwrap(), r(8, 5));
        let x = PairingElement::single(2, Character { coords: vec![1, 0] }).unwrap();
        assert_eq!(lemma_4_8_values(&v4, 5, &x).unwrap(), r(4, 5));
        assert_eq!(lemma_4_8_values(&g("3,3"), 5, &PairingElement::trivial()).unwrap(), r(1, 1));
    }

    #[test]
    fn fit_shapes() {
        let pts: Vec<(f64, f64)> = [1e6, 1e7, 1e8].iter().map(|&b| (b, b)).collect();
        assert!((asymptotic_fit(&pts, 1.0, 1.0).unwrap().slope - 1.0).abs() < 1e-12);
        assert_eq!(asymptotic_fit(&pts[..2], 1.0, 1.0), Err(Error::TooFewPoints(2)));
    }

    #[test]
    fn grid_within_tolerances() {
        let r = identity_grid().unwrap();
        assert!(r.closed_form_deviation < 1e-9, "{r:?}");
        assert!(r.vanishing_deviation < 1e-12, "{r:?}");
        assert!(r.leading_coefficient_deviation < 1e-6, "{r:?}");
        assert!(r.vanishing_cases > 0 && r.leading_coefficient_cases > 0);
    }
}
