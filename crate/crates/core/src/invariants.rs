//! Surfaces, Chern-number triples and 3-fold records, with the universal
//! relations between them.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{big, div_exact, int, Scalar};

/// Three-valued flag for properties that are not always decidable here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TriState {
    Yes,
    No,
    Unknown,
}

impl TriState {
    pub fn from_bool(b: bool) -> Self {
        if b {
            TriState::Yes
        } else {
            TriState::No
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TriState::Yes => "yes",
            TriState::No => "no",
            TriState::Unknown => "unknown",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "yes" => Some(TriState::Yes),
            "no" => Some(TriState::No),
            "unknown" => Some(TriState::Unknown),
            _ => None,
        }
    }
}

impl fmt::Display for TriState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Where a surface came from, as far as anti-self-dual metric existence is
/// concerned.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Lineage<T> {
    /// Supplied by hand; nothing is known about its metrics.
    Literal,
    /// Catalogue surface `N(m)` followed by `blowups` connected sums with CP̄₂.
    Catalog { m: T, blowups: T },
}

/// A closed oriented 4-manifold, usually a complex surface, recorded by its
/// Euler characteristic and signature.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Surface4<T> {
    pub name: String,
    pub chi: T,
    pub tau: T,
    pub spin: bool,
    pub kahler: bool,
    pub simply_connected: TriState,
    pub complex: bool,
    pub lineage: Lineage<T>,
    pub provenance: Vec<String>,
}

impl<T: Scalar> Surface4<T> {
    /// `c₁² = 2χ + 3τ`.
    pub fn c1_squared(&self) -> T {
        int::<T>(2) * self.chi.clone() + int::<T>(3) * self.tau.clone()
    }

    /// `(χ + τ)/4`, exact for complex surfaces. For non-complex data the
    /// quotient is truncated toward negative infinity.
    pub fn todd(&self) -> T {
        (self.chi.clone() + self.tau.clone()).div_floor(&int(4))
    }
}

/// Builds a surface from its invariants, rejecting inconsistent complex data.
pub fn mk_surface<T: Scalar>(
    name: &str,
    chi: T,
    tau: T,
    spin: bool,
    kahler: bool,
    simply_connected: TriState,
    complex: bool,
) -> Result<Surface4<T>> {
    let sum = chi.clone() + tau.clone();
    if complex && !sum.is_multiple_of(&int(4)) {
        return Err(Error::NotComplexSurface {
            name: name.to_string(),
            sum: big(&sum),
        });
    }
    Ok(Surface4 {
        name: name.to_string(),
        chi,
        tau,
        spin,
        kahler,
        simply_connected,
        complex,
        lineage: Lineage::Literal,
        provenance: vec![format!("surface {name}")],
    })
}

/// `s # k CP̄₂`, equivalently `k` point blow-ups when `s` is complex.
pub fn connect_sum_cp2bar<T: Scalar>(s: &Surface4<T>, k: &T) -> Result<Surface4<T>> {
    if k.is_negative() {
        return Err(Error::Negative {
            what: "number of CP2-bar summands",
            value: big(k),
        });
    }
    if k.is_zero() {
        return Ok(s.clone());
    }
    let lineage = match &s.lineage {
        Lineage::Literal => Lineage::Literal,
        Lineage::Catalog { m, blowups } => Lineage::Catalog {
            m: m.clone(),
            blowups: blowups.clone() + k.clone(),
        },
    };
    let mut provenance = s.provenance.clone();
    provenance.push(format!("connected sum with {k} CP2-bar"));
    Ok(Surface4 {
        name: format!("{} # {} CP2-bar", s.name, k),
        chi: s.chi.clone() + k.clone(),
        tau: s.tau.clone() - k.clone(),
        spin: false,
        kahler: s.kahler,
        simply_connected: s.simply_connected,
        complex: s.complex,
        lineage,
        provenance,
    })
}

/// The Chern numbers `(∫c₁³, ∫c₁c₂, ∫c₃)` of a 3-fold.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CharNumbers<T> {
    pub c1_cubed: T,
    pub c1c2: T,
    pub c3: T,
}

impl<T: Scalar> CharNumbers<T> {
    pub fn new(c1_cubed: T, c1c2: T, c3: T) -> Self {
        Self { c1_cubed, c1c2, c3 }
    }

    pub fn from_i64(c1_cubed: i64, c1c2: i64, c3: i64) -> Self {
        Self::new(int(c1_cubed), int(c1c2), int(c3))
    }
}

impl<T: fmt::Display> fmt::Display for CharNumbers<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.c1_cubed, self.c1c2, self.c3)
    }
}

/// A 6-manifold with an almost-complex or complex structure and what is known
/// about it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ThreeFold<T> {
    pub numbers: CharNumbers<T>,
    pub spin: bool,
    pub kahler_type: TriState,
    pub simply_connected: TriState,
    /// The structure is known only up to homotopy and may not be integrable.
    pub almost_complex_only: bool,
    pub provenance: Vec<String>,
}

/// Blows up `l` points of an integrable 3-fold.
///
/// Each blow-up is a connected sum with CP₃ and shifts `(c₁³, c₁c₂, c₃)` by
/// `(+8, 0, +2)`. Spin, Kähler type and π₁ are unchanged.
pub fn blow_up<T: Scalar>(x: &ThreeFold<T>, l: &T) -> Result<ThreeFold<T>> {
    if l.is_negative() {
        return Err(Error::Negative {
            what: "number of blown-up points",
            value: big(l),
        });
    }
    if x.almost_complex_only {
        return Err(Error::AlmostComplexBlowUp);
    }
    if l.is_zero() {
        return Ok(x.clone());
    }
    let n = &x.numbers;
    let mut provenance = x.provenance.clone();
    provenance.push(format!("blow up {l} points"));
    Ok(ThreeFold {
        numbers: CharNumbers {
            c1_cubed: n.c1_cubed.clone() + int::<T>(8) * l.clone(),
            c1c2: n.c1c2.clone(),
            c3: n.c3.clone() + int::<T>(2) * l.clone(),
        },
        spin: x.spin,
        kahler_type: x.kahler_type,
        simply_connected: x.simply_connected,
        almost_complex_only: false,
        provenance,
    })
}

/// `χ(O) = c₁c₂ / 24`.
pub fn todd_genus<T: Scalar>(x: &CharNumbers<T>) -> Result<T> {
    div_exact(&x.c1c2, &int(24)).ok_or_else(|| Error::NonIntegralTodd {
        c1c2: big(&x.c1c2),
    })
}

/// `c₁c₂ = (c₁³ − c₁p₁)/2`, from `p₁ = c₁² − 2c₂`.
pub fn chern_relation<T: Scalar>(c1_cubed: &T, c1_p1: &T) -> Result<T> {
    let difference = c1_cubed.clone() - c1_p1.clone();
    div_exact(&difference, &int(2)).ok_or_else(|| Error::OddChernDifference {
        difference: big(&difference),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k3() -> Surface4<i64> {
        mk_surface("K3", 24, -16, true, true, TriState::Yes, true).unwrap()
    }

    fn tf(c1_cubed: i64, c1c2: i64, c3: i64) -> ThreeFold<i64> {
        ThreeFold {
            numbers: CharNumbers::new(c1_cubed, c1c2, c3),
            spin: true,
            kahler_type: TriState::Unknown,
            simply_connected: TriState::Yes,
            almost_complex_only: false,
            provenance: vec![],
        }
    }

    #[test]
    fn surface_derived_invariants() {
        let s = k3();
        assert_eq!((s.c1_squared(), s.todd()), (0, 2));
        let cp2 = mk_surface("CP2", 3i64, 1, false, true, TriState::Yes, true).unwrap();
        assert_eq!((cp2.c1_squared(), cp2.todd()), (9, 1));
    }

    #[test]
    fn complex_surface_needs_integral_todd() {
        let err = mk_surface("bad", 5i64, 1, false, false, TriState::Unknown, true).unwrap_err();
        assert!(matches!(err, Error::NotComplexSurface { .. }));
        // the same data is fine as an abstract 4-manifold
        assert!(mk_surface("bad", 5i64, 1, false, false, TriState::Unknown, false).is_ok());
    }

    #[test]
    fn connected_sums() {
        let s = connect_sum_cp2bar(&k3(), &5).unwrap();
        assert_eq!((s.chi, s.tau, s.c1_squared()), (29, -21, -5));
        assert!(!s.spin);
        assert_eq!(s.todd(), 2);
        assert_eq!(connect_sum_cp2bar(&k3(), &0).unwrap(), k3());

        let p1p1 = mk_surface("CP1xCP1", 4i64, 0, true, true, TriState::Yes, true).unwrap();
        let m = connect_sum_cp2bar(&p1p1, &14).unwrap();
        assert_eq!((m.chi, m.tau, m.c1_squared()), (18, -14, -6));

        assert!(matches!(
            connect_sum_cp2bar(&k3(), &-1),
            Err(Error::Negative { .. })
        ));
    }

    #[test]
    fn blow_up_shifts() {
        let x = blow_up(&tf(0, 48, 48), &1).unwrap();
        assert_eq!(x.numbers, CharNumbers::new(8, 48, 50));
        let x = blow_up(&tf(72, 24, 6), &3).unwrap();
        assert_eq!(x.numbers, CharNumbers::new(96, 24, 12));
        assert_eq!(blow_up(&tf(72, 24, 6), &0).unwrap(), tf(72, 24, 6));
        assert!(matches!(blow_up(&tf(0, 0, 0), &-2), Err(Error::Negative { .. })));

        let mut ac = tf(8, 0, 4);
        ac.almost_complex_only = true;
        assert_eq!(blow_up(&ac, &1), Err(Error::AlmostComplexBlowUp));
    }

    #[test]
    fn blow_up_keeps_flags() {
        for kt in [TriState::Yes, TriState::No, TriState::Unknown] {
            let mut x = tf(0, 48, 48);
            x.kahler_type = kt;
            x.spin = false;
            let y = blow_up(&x, &4).unwrap();
            assert_eq!((y.kahler_type, y.spin, y.simply_connected), (kt, false, TriState::Yes));
        }
    }

    #[test]
    fn todd_values() {
        assert_eq!(todd_genus(&CharNumbers::new(0i64, 48, 48)), Ok(2));
        assert_eq!(todd_genus(&CharNumbers::new(0i64, 0, 0)), Ok(0));
        assert!(matches!(
            todd_genus(&CharNumbers::new(0i64, 36, 0)),
            Err(Error::NonIntegralTodd { .. })
        ));
    }

    #[test]
    fn chern_relation_values() {
        assert_eq!(chern_relation(&0i64, &-96), Ok(48));
        assert_eq!(chern_relation(&64i64, &16), Ok(24));
        assert_eq!(chern_relation(&0i64, &0), Ok(0));
        assert!(matches!(
            chern_relation(&1i64, &0),
            Err(Error::OddChernDifference { .. })
        ));
    }

    proptest! {
        #[test]
        fn blow_up_composes(c1 in -1000i64..1000, c2 in -40i64..40, c3 in -100i64..100,
                            a in 0i64..50, b in 0i64..50, spin: bool) {
            let mut x = tf(8 * c1, 24 * c2, c3);
            x.spin = spin;
            let two_step = blow_up(&blow_up(&x, &a).unwrap(), &b).unwrap();
            let one_step = blow_up(&x, &(a + b)).unwrap();
            prop_assert_eq!(two_step.numbers, one_step.numbers);
            prop_assert_eq!(two_step.spin, one_step.spin);
            prop_assert_eq!(two_step.kahler_type, one_step.kahler_type);
            prop_assert_eq!(two_step.simply_connected, one_step.simply_connected);
        }

        #[test]
        fn chern_relation_is_additive(a in -10_000i64..10_000, b in -10_000i64..10_000,
                                      a2 in -10_000i64..10_000, b2 in -10_000i64..10_000) {
            // force even differences
            let b = b + (a - b).rem_euclid(2);
            let b2 = b2 + (a2 - b2).rem_euclid(2);
            let lhs = chern_relation(&(a + a2), &(b + b2)).unwrap();
            prop_assert_eq!(lhs, chern_relation(&a, &b).unwrap() + chern_relation(&a2, &b2).unwrap());
        }

        #[test]
        fn connected_sum_lowers_c1_squared(chi in -100i64..100, tau in -100i64..100, k in 0i64..200) {
            let s = mk_surface("s", chi, tau, false, false, TriState::Unknown, false).unwrap();
            let t = connect_sum_cp2bar(&s, &k).unwrap();
            prop_assert_eq!(t.c1_squared(), s.c1_squared() - k);
        }
    }
}
