//! Named 3-fold constructions and the solver that realizes prescribed
//! Chern-number targets on one 6-manifold with two complex structures.

use std::fmt;

use crate::error::{Error, Result};
use crate::invariants::{
    blow_up, chern_relation, connect_sum_cp2bar, CharNumbers, Lineage, Surface4, ThreeFold,
    TriState,
};
use crate::scalar::{big, int, Scalar};

/// How existence of anti-self-dual metrics on a surface is decided.
///
/// Only the catalogue thresholds `k₀(m)` for `m ≤ 2` are known. Beyond that
/// the policy either assumes existence or refuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum AsdPolicy {
    /// Use the tabulated thresholds; catalogue surfaces with `m ≥ 3` can be
    /// built but not used as twistor bases.
    #[default]
    KnownTable,
    /// Treat every surface as admitting an anti-self-dual metric (`k₀ = 0`).
    /// Results are unverified.
    Assume,
    /// Like `KnownTable`, but refuse even to build catalogue surfaces without
    /// a tabulated threshold.
    RejectUnknown,
}

impl AsdPolicy {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "known" => Some(AsdPolicy::KnownTable),
            "assume" => Some(AsdPolicy::Assume),
            "reject" => Some(AsdPolicy::RejectUnknown),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            AsdPolicy::KnownTable => "known",
            AsdPolicy::Assume => "assume",
            AsdPolicy::RejectUnknown => "reject",
        }
    }

    /// `k₀(m)`, the number of CP̄₂ summands after which `N(m) # k CP̄₂` carries
    /// anti-self-dual metrics for every `k ≥ k₀(m)`.
    ///
    /// `Ok(None)` means the threshold is unknown and the policy does not
    /// supply one.
    pub fn k0<T: Scalar>(self, m: &T) -> Result<Option<T>> {
        if let Some(k0) = tabulated_k0(m) {
            return Ok(Some(k0));
        }
        match self {
            AsdPolicy::Assume => Ok(Some(T::zero())),
            AsdPolicy::KnownTable => Ok(None),
            AsdPolicy::RejectUnknown => Err(Error::UnknownK0 { m: big(m) }),
        }
    }

    /// Decides whether `s` may serve as the base of a twistor space.
    pub fn admits<T: Scalar>(self, s: &Surface4<T>) -> Result<Admission> {
        let fallback = |reason: String| match self {
            AsdPolicy::Assume => Ok(Admission::Assumed),
            _ => Err(Error::PolicyRejected {
                surface: s.name.clone(),
                reason,
            }),
        };
        match &s.lineage {
            Lineage::Literal => fallback("hand-entered surface without a known metric".into()),
            Lineage::Catalog { m, blowups } => {
                // N(2) is a K3 surface; its Ricci-flat metrics are anti-self-dual.
                if *m == int(2) && blowups.is_zero() {
                    return Ok(Admission::Certified);
                }
                match tabulated_k0(m) {
                    Some(k0) if *blowups >= k0 => Ok(Admission::Certified),
                    Some(k0) => fallback(format!(
                        "{blowups} CP2-bar summands is below k0({m}) = {k0}"
                    )),
                    None if self == AsdPolicy::Assume => Ok(Admission::Assumed),
                    None => Err(Error::UnknownK0 { m: big(m) }),
                }
            }
        }
    }
}

impl fmt::Display for AsdPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of [`AsdPolicy::admits`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Admission {
    /// Existence follows from the known results.
    Certified,
    /// Existence was assumed by policy.
    Assumed,
}

fn tabulated_k0<T: Scalar>(m: &T) -> Option<T> {
    if m.is_negative() {
        return Some(T::zero());
    }
    match m.to_i64()? {
        0 => Some(int(6)),
        1 => Some(int(14)),
        2 => Some(int(3)),
        _ => None,
    }
}

fn extend(provenance: &[String], step: String) -> Vec<String> {
    let mut p = provenance.to_vec();
    p.push(step);
    p
}

/// Twistor space `(Z, J₂)` of an anti-self-dual metric on `s`:
/// `(16(2χ+3τ), 12(χ+τ), 2χ)`.
pub fn twistor_threefold<T: Scalar>(s: &Surface4<T>, policy: AsdPolicy) -> Result<ThreeFold<T>> {
    policy.admits(s)?;
    let (chi, tau) = (s.chi.clone(), s.tau.clone());
    // Only S⁴ and CP₂ have Kähler twistor spaces.
    let exceptional = chi == int(2) && tau.is_zero()
        || chi == int(3) && (tau == int(1) || tau == int(-1));
    Ok(ThreeFold {
        numbers: CharNumbers {
            c1_cubed: int::<T>(16) * s.c1_squared(),
            c1c2: int::<T>(12) * (chi.clone() + tau),
            c3: int::<T>(2) * chi,
        },
        spin: true,
        kahler_type: if exceptional { TriState::Unknown } else { TriState::No },
        simply_connected: s.simply_connected,
        almost_complex_only: false,
        provenance: extend(&s.provenance, "twistor space (J2)".into()),
    })
}

/// `P(O ⊕ K⁻¹)` over a complex surface: `(8(2χ+3τ), 6(χ+τ), 2χ)`.
///
/// Same underlying 6-manifold as the twistor space of `s`.
pub fn proj_canonical_threefold<T: Scalar>(s: &Surface4<T>) -> Result<ThreeFold<T>> {
    if !s.complex {
        return Err(Error::RequiresComplexSurface {
            name: s.name.clone(),
        });
    }
    Ok(ThreeFold {
        numbers: CharNumbers {
            c1_cubed: int::<T>(8) * s.c1_squared(),
            c1c2: int::<T>(6) * (s.chi.clone() + s.tau.clone()),
            c3: int::<T>(2) * s.chi.clone(),
        },
        spin: true,
        kahler_type: if s.kahler { TriState::Yes } else { TriState::Unknown },
        simply_connected: s.simply_connected,
        almost_complex_only: false,
        provenance: extend(&s.provenance, "projectivized O + K^-1 (J1)".into()),
    })
}

/// The characteristic-class bookkeeping behind the pulled-back K3 family.
///
/// For `f_m` of degree `m − 1`, `c₁ = m·c₁(L)` with `L` the vertical line
/// bundle, `c₁(L)² = 0`, and `p₁ = −48F` where `F` is dual to a fibre sphere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K3FamilyDerivation<T> {
    pub m: T,
    /// `∫_F c₁(L)`: degree of the tangent bundle of CP₁.
    pub fiber_integral_c1_l: T,
    /// Coefficient of `F` in `p₁`, i.e. `p₁(K3)`.
    pub p1_fiber_coefficient: T,
    pub c1_cubed: T,
    pub c1_p1: T,
    pub c1c2: T,
}

pub fn k3_pullback_derivation<T: Scalar>(m: &T) -> Result<K3FamilyDerivation<T>> {
    if !m.is_positive() {
        return Err(Error::NonPositive {
            what: "K3 family index m",
            value: big(m),
        });
    }
    let fiber_integral_c1_l = int::<T>(2);
    let p1_fiber_coefficient = int::<T>(-48);
    let c1_cubed = T::zero();
    let c1_p1 = m.clone() * p1_fiber_coefficient.clone() * fiber_integral_c1_l.clone();
    let c1c2 = chern_relation(&c1_cubed, &c1_p1)?;
    Ok(K3FamilyDerivation {
        m: m.clone(),
        fiber_integral_c1_l,
        p1_fiber_coefficient,
        c1_cubed,
        c1_p1,
        c1c2,
    })
}

/// `K3 × S²` with the complex structure `J_m` pulled back from the twistor
/// fibration of a hyper-Kähler K3 along a degree `m − 1` map: `(0, 48m, 48)`.
pub fn k3_pullback_family<T: Scalar>(m: &T) -> Result<ThreeFold<T>> {
    let d = k3_pullback_derivation(m)?;
    // h²(O) = 2m − 1 would exceed b₂(K3 × S²) = 23 for a Kähler structure.
    let kahler_type = if *m == T::one() {
        TriState::Yes
    } else if *m == int(2) || int::<T>(2) * m.clone() - T::one() > int(23) {
        TriState::No
    } else {
        TriState::Unknown
    };
    Ok(ThreeFold {
        numbers: CharNumbers {
            c1_cubed: d.c1_cubed,
            c1c2: d.c1c2,
            c3: int(48),
        },
        spin: true,
        kahler_type,
        simply_connected: TriState::Yes,
        almost_complex_only: false,
        provenance: vec![format!("K3 x S2 with pulled-back structure J_{m}")],
    })
}

/// Almost-complex structure on CP₃ with `c₁ = 2jH`: `(8j³, 4j³ − 4j, 4)`.
///
/// `c₂` is forced by `p₁(CP₃) = 4H²`. Only `j = 2` is the integrable one.
pub fn cp3_almost_complex<T: Scalar>(j: &T) -> ThreeFold<T> {
    let j3 = j.clone() * j.clone() * j.clone();
    let c1_cubed = int::<T>(8) * j3;
    let c1_p1 = int::<T>(8) * j.clone();
    let c1c2 = chern_relation(&c1_cubed, &c1_p1).expect("8j^3 - 8j is even");
    ThreeFold {
        numbers: CharNumbers {
            c1_cubed,
            c1c2,
            c3: int(4),
        },
        spin: true,
        kahler_type: TriState::Unknown,
        simply_connected: TriState::Yes,
        almost_complex_only: true,
        provenance: vec![format!("CP3 almost-complex structure with c1 = {}H", int::<T>(2) * j.clone())],
    }
}

/// The catalogue surface `N(m)` of Todd genus `m`, with its threshold `k₀(m)`.
///
/// `m ≤ 1`: `C × CP₁` with `C` of genus `1 − m`. `m > 1`: the minimal
/// resolution of `(E × C)/ℤ₂`, an elliptic surface with `χ = 12m`,
/// `τ = −8m`. The threshold is `None` when unknown under the policy.
pub fn standard_surface<T: Scalar>(m: &T, policy: AsdPolicy) -> Result<(Surface4<T>, Option<T>)> {
    let k0 = policy.k0(m)?;
    let (name, chi, tau, spin, simply_connected) = if *m <= T::one() {
        let genus = T::one() - m.clone();
        let curve = match genus.to_i64() {
            Some(0) => "CP1".to_string(),
            Some(1) => "T2".to_string(),
            _ => format!("C_{genus}"),
        };
        (
            format!("{curve} x CP1"),
            int::<T>(4) * m.clone(),
            T::zero(),
            true,
            TriState::from_bool(*m == T::one()),
        )
    } else {
        (
            format!("resolved (E x C_{})/Z2", m.clone() - T::one()),
            int::<T>(12) * m.clone(),
            int::<T>(-8) * m.clone(),
            // K = (m - 2)F with F primitive
            m.is_even(),
            TriState::Yes,
        )
    };
    let surface = Surface4 {
        name: name.clone(),
        chi,
        tau,
        spin,
        kahler: true,
        simply_connected,
        complex: true,
        lineage: Lineage::Catalog {
            m: m.clone(),
            blowups: T::zero(),
        },
        provenance: vec![format!("catalogue surface N({m}) = {name}")],
    };
    Ok((surface, k0))
}

/// One 6-manifold `X(k, ℓ, m)` with two complex structures realizing
/// `(c₁³, c₁c₂) = (8n, 24m)` and `(8ñ, 48m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationPlan<T> {
    pub m: T,
    pub n: T,
    pub n_tilde: T,
    /// `N(m) # k CP̄₂`.
    pub surface: Surface4<T>,
    pub k0: T,
    pub k: T,
    pub l: T,
    pub x_j: ThreeFold<T>,
    pub x_jtilde: ThreeFold<T>,
}

/// Largest `ñ` accepted by [`realize_targets`] for the given `(m, n)`:
/// `min(n − k₀(m) + c₁²(N(m)), 2n)`.
pub fn max_admissible_n_tilde<T: Scalar>(m: &T, n: &T, policy: AsdPolicy) -> Result<T> {
    let (surface, k0) = standard_surface(m, policy)?;
    let k0 = k0.ok_or_else(|| Error::UnknownK0 { m: big(m) })?;
    let via_k = n.clone() - k0 + surface.c1_squared();
    let via_l = int::<T>(2) * n.clone();
    Ok(via_k.min(via_l))
}

pub fn realize_targets<T: Scalar>(
    m: &T,
    n: &T,
    n_tilde: &T,
    policy: AsdPolicy,
) -> Result<RealizationPlan<T>> {
    let (base, k0) = standard_surface(m, policy)?;
    let k0 = k0.ok_or_else(|| Error::UnknownK0 { m: big(m) })?;
    let max_admissible = (n.clone() - k0.clone() + base.c1_squared()).min(int::<T>(2) * n.clone());
    if *n_tilde > max_admissible {
        return Err(Error::TargetInfeasible {
            n_tilde: big(n_tilde),
            max_admissible: big(&max_admissible),
        });
    }
    let k = n.clone() - n_tilde.clone() + base.c1_squared();
    let l = int::<T>(2) * n.clone() - n_tilde.clone();
    let surface = connect_sum_cp2bar(&base, &k)?;
    let x_j = blow_up(&proj_canonical_threefold(&surface)?, &l)?;
    let x_jtilde = blow_up(&twistor_threefold(&surface, policy)?, &l)?;
    Ok(RealizationPlan {
        m: m.clone(),
        n: n.clone(),
        n_tilde: n_tilde.clone(),
        surface,
        k0,
        k,
        l,
        x_j,
        x_jtilde,
    })
}

/// `(K3 × S²) # n CP₃` with the blown-up family structure: `(8n, 48m, 48 + 2n)`.
pub fn corollary_family<T: Scalar>(m: &T, n: &T) -> Result<ThreeFold<T>> {
    if n.is_negative() {
        return Err(Error::Negative {
            what: "number of CP3 summands n",
            value: big(n),
        });
    }
    blow_up(&k3_pullback_family(m)?, n)
}
