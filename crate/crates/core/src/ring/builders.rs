//! Ring-level recomputation of the Chern numbers of each construction.

use crate::error::{Error, Result};
use crate::invariants::{CharNumbers, Surface4};
use crate::scalar::{big, int, Scalar};

use super::{mk_graded_ring, projective_bundle_ring, GradedRing, RingError, RingPresentation};

/// The subring of a surface's cohomology generated by `u = c₁` and the point
/// class, with `u² = c₁²·pt`.
pub fn surface_ring<T: Scalar>(c1_squared: &T) -> GradedRing<T> {
    let basis = vec![vec!["1".to_string()], vec!["u".to_string()], vec!["pt".to_string()]];
    let mut p = RingPresentation::<T> { basis, products: Vec::new() };
    p.products.push(("u".into(), "u".into(), vec![(c1_squared.clone(), "pt".into())]));
    mk_graded_ring(&p).expect("surface characteristic ring is valid")
}

/// `H*(CPⁿ) = ℤ[H]/(Hⁿ⁺¹)` for `1 ≤ n ≤ 3`.
pub fn projective_space_ring<T: Scalar>(n: usize) -> Result<GradedRing<T>, RingError> {
    let names: Vec<String> = (0..=n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "H".to_string(),
            _ => format!("H{i}"),
        })
        .collect();
    let mut p = RingPresentation::<T> {
        basis: names.iter().map(|s| vec![s.clone()]).collect(),
        products: Vec::new(),
    };
    for i in 1..=n {
        for j in i..=n - i {
            p.products.push((names[i].clone(), names[j].clone(), vec![(T::one(), names[i + j].clone())]));
        }
    }
    mk_graded_ring(&p)
}

/// Which construction to recompute in the ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingBuilder<T> {
    /// `P(O ⊕ K⁻¹)` with `c₁ = 2Σ`, `Σ = ξ`.
    ProjCanonical(Surface4<T>),
    /// Same manifold with `c₁ = 2Σ + 2Σ̄`, `Σ̄ = ξ − π*u`.
    TwistorSymmetric(Surface4<T>),
    /// `K3 × CP₁` with the product structure.
    ProductK3Sphere,
    /// `K3 × S²` with `c₁ = m·c₁(L)` and `p₁ = −48F`.
    K3Pullback(T),
    /// CP₃ with `c₁ = 2jH`.
    Cp3(T),
}

/// Integrates `c₁³`, `c₁c₂` and `c₃` in the ring model of `builder`.
pub fn chern_numbers_via_ring<T: Scalar>(builder: &RingBuilder<T>) -> Result<CharNumbers<T>> {
    match builder {
        RingBuilder::ProjCanonical(s) => over_surface(s, false),
        RingBuilder::TwistorSymmetric(s) => over_surface(s, true),
        RingBuilder::ProductK3Sphere => k3_times_sphere(&T::one()),
        RingBuilder::K3Pullback(m) => {
            if !m.is_positive() {
                return Err(Error::NonPositive { what: "K3 family index m", value: big(m) });
            }
            k3_times_sphere(m)
        }
        RingBuilder::Cp3(j) => cp3(j),
    }
}

fn numbers<T: Scalar>(
    c1: &super::RingClass<'_, T>,
    c2: &super::RingClass<'_, T>,
    c3: &super::RingClass<'_, T>,
) -> Result<CharNumbers<T>> {
    Ok(CharNumbers {
        c1_cubed: c1.pow(3).integrate()?,
        c1c2: (c1 * c2).integrate()?,
        c3: c3.integrate()?,
    })
}

fn over_surface<T: Scalar>(s: &Surface4<T>, twistor: bool) -> Result<CharNumbers<T>> {
    if !s.complex {
        return Err(Error::RequiresComplexSurface { name: s.name.clone() });
    }
    let base = surface_ring(&s.c1_squared());
    let u = base.basis_class("u")?;
    let z = projective_bundle_ring(&base, &u, &base.zero(4))?;
    let xi = z.xi();
    let pu = z.pullback(&u)?;
    let c2m = z.pullback(&base.volume().scale(&s.chi))?;

    let sigma = xi.clone();
    let sigma_bar = &xi - &pu;
    // T_vert = O(Σ + Σ̄), so c(Z, J₁) = π*c(M)·(1 + Σ + Σ̄)
    let vertical = &sigma + &sigma_bar;
    let c1 = &pu + &vertical;
    debug_assert_eq!(c1, sigma.scale(&int(2)));
    let c2 = &c2m + &(&pu * &vertical);
    let c3 = &c2m * &vertical;
    if !twistor {
        return numbers(&c1, &c2, &c3);
    }

    // p₁ is a smooth invariant, shared by J₁ and J₂
    let p1 = &c1.pow(2) - &c2.scale(&int(2));
    let c1_twistor = (&sigma + &sigma_bar).scale(&int(2));
    let c2_twistor = (&c1_twistor.pow(2) - &p1).div_exact(&int(2))?;
    numbers(&c1_twistor, &c2_twistor, &c3)
}

fn k3_times_sphere<T: Scalar>(m: &T) -> Result<CharNumbers<T>> {
    let base = surface_ring::<T>(&T::zero());
    let z = projective_bundle_ring(&base, &base.zero(2), &base.zero(4))?;
    // σ = ξ, dual to a K3 slice; F = π*pt, dual to a sphere fibre
    let sigma = z.xi();
    let fiber = z.pullback(&base.volume())?;

    let cp1 = projective_space_ring::<T>(1)?;
    let tangent_degree = cp1.basis_class("H")?.scale(&int(2)).integrate()?;
    let c1_l = sigma.scale(&tangent_degree);
    let c1 = c1_l.scale(m);
    let p1 = fiber.scale(&int(-48));
    let c2 = (&c1.pow(2) - &p1).div_exact(&int(2))?;
    // Euler class: e(K3) × e(S²)
    let c3 = &fiber.scale(&int(24)) * &c1_l;
    numbers(&c1, &c2, &c3)
}

fn cp3<T: Scalar>(j: &T) -> Result<CharNumbers<T>> {
    let ring = projective_space_ring::<T>(3)?;
    let h = ring.basis_class("H")?;
    let c1 = h.scale(&(int::<T>(2) * j.clone()));
    // c(TCP₃) = (1 + H)⁴ and p(TCP₃) = (1 + H²)⁴
    let p1 = h.pow(2).scale(&int(4));
    let c2 = (&c1.pow(2) - &p1).div_exact(&int(2))?;
    let c3 = h.pow(3).scale(&int(4));
    numbers(&c1, &c2, &c3)
}
