//! Characters of the unit group of `Q_p` with values in a finite abelian group:
//! their images, conductors, discriminant exponents and evaluation at units.
//!
//! For odd `p` a component is determined by `gamma`, the image of the fixed
//! primitive root `g`. For `p = 2` it is determined by `eps`, the image of `-1`,
//! and `w`, the image of `5`.

use num::BigUint;
use serde_json::{json, Value};

use crate::arith;
use crate::error::{Error, Result};
use crate::groups::{Character, FinAbGroup, GroupElement, Subgroup};

mod conditions;

pub use conditions::{DefaultRule, LocalConditionSet, LocalPredicate, Rule, matches_condition};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LocalComponent {
    p: u64,
    /// `[gamma]` for odd `p`, `[eps, w]` for `p = 2`.
    images: Vec<GroupElement>,
    level: u32,
}

impl LocalComponent {
    /// Component at an odd prime sending the primitive root to `gamma`.
    pub fn odd(g: &FinAbGroup, p: u64, gamma: GroupElement) -> Result<Self> {
        arith::require_prime(p)?;
        if p == 2 {
            return Err(Error::InvalidComponent("use LocalComponent::two at p = 2".into()));
        }
        if !g.contains_element(&gamma) {
            return Err(Error::InvalidComponent(format!("{gamma} is not in {g}")));
        }
        let o = g.element_order(&gamma);
        let v = arith::valuation(o, p);
        let tame = o / p.pow(v);
        if (p - 1) % tame != 0 {
            return Err(Error::InvalidComponent(format!(
                "order {o} of {gamma} does not divide (p-1)·p^k at p = {p}"
            )));
        }
        let level = if o == 1 { 0 } else { 1 + v };
        Ok(LocalComponent { p, images: vec![gamma], level })
    }

    /// Component at 2 sending `-1` to `eps` and `5` to `w`.
    pub fn two(g: &FinAbGroup, eps: GroupElement, w: GroupElement) -> Result<Self> {
        if !g.contains_element(&eps) || !g.contains_element(&w) {
            return Err(Error::InvalidComponent("images are not elements of the group".into()));
        }
        if g.element_order(&eps) > 2 {
            return Err(Error::InvalidComponent(format!("eps = {eps} has order > 2")));
        }
        let ow = g.element_order(&w);
        if !ow.is_power_of_two() {
            return Err(Error::InvalidComponent(format!("w = {w} does not have 2-power order")));
        }
        let level = if ow >= 2 {
            ow.trailing_zeros() + 2
        } else if !eps.is_zero() {
            2
        } else {
            0
        };
        Ok(LocalComponent { p: 2, images: vec![eps, w], level })
    }

    pub fn trivial(g: &FinAbGroup, p: u64) -> Self {
        if p == 2 {
            LocalComponent { p, images: vec![g.zero(), g.zero()], level: 0 }
        } else {
            LocalComponent { p, images: vec![g.zero()], level: 0 }
        }
    }

    /// Tame component of level 1; `gamma` must be nontrivial of order dividing `p - 1`.
    pub(crate) fn tame_unchecked(p: u64, gamma: GroupElement) -> Self {
        LocalComponent { p, images: vec![gamma], level: 1 }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Minimal `a` such that the character factors through `(Z/p^a)^*`.
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn is_trivial(&self) -> bool {
        self.level == 0
    }

    pub fn gamma(&self) -> Option<&GroupElement> {
        (self.p != 2).then(|| &self.images[0])
    }

    pub fn eps(&self) -> Option<&GroupElement> {
        (self.p == 2).then(|| &self.images[0])
    }

    pub fn w(&self) -> Option<&GroupElement> {
        (self.p == 2).then(|| &self.images[1])
    }

    /// The images of the fixed unit generators.
    pub fn images(&self) -> &[GroupElement] {
        &self.images
    }

    /// The inertia subgroup, generated by the images.
    pub fn inertia(&self, g: &FinAbGroup) -> Subgroup {
        Subgroup::generated(g, &self.images)
    }

    /// Value at a unit `u` (an integer prime to `p`).
    pub fn evaluate(&self, g: &FinAbGroup, u: i64) -> Result<GroupElement> {
        if u.rem_euclid(self.p as i64) == 0 {
            return Err(Error::NotUnit { u, p: self.p });
        }
        Ok(self.evaluate_unit(g, u))
    }

    pub(crate) fn evaluate_unit(&self, g: &FinAbGroup, u: i64) -> GroupElement {
        if self.level == 0 {
            return g.zero();
        }
        let p = self.p;
        let modulus = p.pow(self.level);
        let u = arith::reduce_signed(u, modulus);
        if p == 2 {
            let (eps, w) = (&self.images[0], &self.images[1]);
            let e0 = u % 4 == 3;
            let v = if e0 { modulus - u } else { u };
            let ow = g.element_order(w);
            let e1 = arith::log_mod(5, v, modulus, modulus / 4, ow);
            let mut out = g.scale(e1, w);
            if e0 {
                out = g.add(&out, eps);
            }
            out
        } else {
            let gamma = &self.images[0];
            let root = arith::primitive_root(p);
            let group_order = modulus / p * (p - 1);
            let k = arith::log_mod(root, u, modulus, group_order, g.element_order(gamma));
            g.scale(k, gamma)
        }
    }

    /// JSON form: `{"p": 5, "gamma": [..]}` or `{"p": 2, "eps": [..], "w": [..]}`.
    pub fn to_json(&self) -> Value {
        if self.p == 2 {
            json!({"p": 2, "eps": self.images[0].coords, "w": self.images[1].coords})
        } else {
            json!({"p": self.p, "gamma": self.images[0].coords})
        }
    }

    pub fn from_json(g: &FinAbGroup, v: &Value) -> Result<Self> {
        let p = v
            .get("p")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse(format!("component without prime: {v}")))?;
        let coords = |key: &str| -> Result<GroupElement> {
            let arr = v
                .get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse(format!("component at {p} lacks {key:?}")))?;
            let c = arr
                .iter()
                .map(|x| x.as_u64().ok_or_else(|| Error::Parse(format!("bad coordinate {x}"))))
                .collect::<Result<Vec<_>>>()?;
            g.element(c).map_err(|e| Error::InvalidComponent(e.to_string()))
        };
        if p == 2 {
            Self::two(g, coords("eps")?, coords("w")?)
        } else {
            Self::odd(g, p, coords("gamma")?)
        }
    }
}

/// All characters of the unit group of `Q_p` into `g`, trivial one included,
/// in increasing order.
pub fn enumerate_local_components(g: &FinAbGroup, p: u64) -> Vec<LocalComponent> {
    let mut out = Vec::new();
    if p == 2 {
        let two_torsion: Vec<GroupElement> =
            g.elements().filter(|x| g.element_order(x) <= 2).collect();
        let sylow: Vec<GroupElement> =
            g.elements().filter(|x| g.element_order(x).is_power_of_two()).collect();
        for eps in &two_torsion {
            for w in &sylow {
                out.push(LocalComponent::two(g, eps.clone(), w.clone()).expect("valid images"));
            }
        }
    } else {
        for gamma in g.elements() {
            let o = g.element_order(&gamma);
            let tame = o / p.pow(arith::valuation(o, p));
            if (p - 1) % tame == 0 {
                out.push(LocalComponent::odd(g, p, gamma).expect("valid image"));
            }
        }
    }
    out.sort();
    out
}

/// Conductor exponent of `ψ ∘ φ_p`: the least `c` with the composite trivial on
/// the higher unit group `1 + p^c Z_p` (on all units for `c = 0`).
pub fn conductor_exponent(g: &FinAbGroup, psi: &Character, comp: &LocalComponent) -> u32 {
    let p = comp.p;
    if p == 2 {
        let eps = g.char_value_order(psi, &comp.images[0]);
        let w = g.char_value_order(psi, &comp.images[1]);
        if w >= 2 {
            w.trailing_zeros() + 2
        } else if eps == 2 {
            2
        } else {
            0
        }
    } else {
        let o = g.char_value_order(psi, &comp.images[0]);
        if o == 1 {
            0
        } else {
            1 + arith::valuation(o, p)
        }
    }
}

/// Exponent of `p` in the discriminant: `Σ_ψ conductor_exponent(ψ, φ_p)`.
pub fn local_disc_exponent(g: &FinAbGroup, comp: &LocalComponent) -> u64 {
    if comp.is_trivial() {
        return 0;
    }
    g.characters().map(|psi| conductor_exponent(g, &psi, comp) as u64).sum()
}

/// `Π_ψ p^{c(ψ ∘ χ)}` for the character `χ` of `Q_p^*` with unit part `comp` and
/// uniformiser image `frob`. Conductors are read off by evaluating `χ` on
/// generators of the higher unit groups.
pub fn phi_g_local(g: &FinAbGroup, comp: &LocalComponent, frob: &GroupElement) -> BigUint {
    let p = comp.p;
    // generators of U^c for c = 0, 1, ..., level
    let top = comp.level.max(1);
    let modulus = p.pow(top + 1);
    let mut layers: Vec<Vec<u64>> = Vec::new();
    if p == 2 {
        layers.push(vec![modulus - 1, 5]);
        layers.push(vec![modulus - 1, 5]);
        for c in 2..=top + 1 {
            layers.push(vec![(1 + (1u64 << c)) % modulus]);
        }
    } else {
        layers.push(vec![arith::primitive_root(p)]);
        for c in 1..=top + 1 {
            layers.push(vec![(1 + p.pow(c)) % modulus]);
        }
    }
    let images: Vec<Vec<GroupElement>> = layers
        .iter()
        .map(|us| us.iter().map(|&u| comp.evaluate_unit(g, u as i64)).collect())
        .collect();
    let mut exponent = 0u64;
    for psi in g.characters() {
        let c = images
            .iter()
            .position(|layer| layer.iter().all(|x| g.pair(&psi, x) == 0))
            .expect("the top layer lies in the kernel");
        exponent += c as u64;
        // the uniformiser plays no part in the conductor
        debug_assert!(g.contains_element(frob));
    }
    BigUint::from(p).pow(exponent as u32)
}
