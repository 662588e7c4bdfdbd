//! Todd genus along the pencil of almost-complex structures `c₁ = 2nα + β`
//! on a Kähler 3-fold, and the point past which no member can be Kähler.
//!
//! For an integrable `J_n`, `χ(O) = c₁c₂/24 = (c₁³ − c₁·p₁)/48`. Expanding
//! `(2nα + β)³` gives a cubic in `n` with leading coefficient `α³/6`. Once
//! `|χ(O)|` exceeds the total Betti number, Hodge symmetry fails and `J_n`
//! cannot be Kähler.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::scalar::{int, Scalar};

/// Cup-product and Pontryagin pairings of the two generators of the pencil.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CupFormFamily<T> {
    /// `∫α³`
    pub a3: T,
    /// `∫α²β`
    pub a2b: T,
    /// `∫αβ²`
    pub ab2: T,
    /// `∫β³`
    pub b3: T,
    /// `∫α·p₁`
    pub a_p1: T,
    /// `∫β·p₁`
    pub b_p1: T,
    /// `Σⱼ bⱼ(X)`
    pub betti_sum: T,
}

impl<T: Scalar> CupFormFamily<T> {
    /// CP₃ with `α = H`, `β = c₁ = 4H`, `p₁ = 4H²`.
    pub fn cp3() -> Self {
        Self {
            a3: int(1),
            a2b: int(4),
            ab2: int(16),
            b3: int(64),
            a_p1: int(4),
            b_p1: int(16),
            betti_sum: int(4),
        }
    }

    /// Coefficients `[c₀, c₁, c₂, c₃]` of `48·χ(O)` as a polynomial in `n`.
    pub fn numerator_coefficients(&self) -> [T; 4] {
        [
            self.b3.clone() - self.b_p1.clone(),
            int::<T>(6) * self.ab2.clone() - int::<T>(2) * self.a_p1.clone(),
            int::<T>(12) * self.a2b.clone(),
            int::<T>(8) * self.a3.clone(),
        ]
    }

    /// `48·χ(O)` at `n`.
    fn numerator_at(&self, n: &T) -> T {
        let [c0, c1, c2, c3] = self.numerator_coefficients();
        ((c3 * n.clone() + c2) * n.clone() + c1) * n.clone() + c0
    }
}

/// `χ(O)` of the structure with `c₁ = 2nα + β`. Non-integral values mean the
/// class is not the `c₁` of any integrable structure.
pub fn todd_of_family<T: Scalar>(f: &CupFormFamily<T>, n: &T) -> Ratio<T> {
    Ratio::new(f.numerator_at(n), int(48))
}

/// Coefficient of `n³` in [`todd_of_family`], `α³/6`.
pub fn leading_coefficient<T: Scalar>(f: &CupFormFamily<T>) -> Ratio<T> {
    Ratio::new(f.a3.clone(), int(6))
}

/// Smallest `N ≥ 0` with `|χ(O)(n)| > Σbⱼ` for every integer `|n| > N`.
///
/// With `S = |c₀| + |c₁| + |c₂|` and `B = 48·Σbⱼ`, every `|n| ≥ R`,
/// `R = ⌈(S + B)/|c₃|⌉ + 1`, satisfies `|P(n)| ≥ n²(|c₃||n| − S) > B`, so only
/// `|n| < R` needs to be scanned.
pub fn non_kahler_threshold<T: Scalar>(f: &CupFormFamily<T>) -> Result<T> {
    if f.a3.is_zero() {
        return Err(Error::DegenerateFamily);
    }
    let [c0, c1, c2, c3] = f.numerator_coefficients();
    let bound = int::<T>(48) * f.betti_sum.clone();
    let spread = c0.abs() + c1.abs() + c2.abs();
    let radius = (spread + bound.clone()).div_ceil(&c3.abs()) + T::one();

    let mut threshold = T::zero();
    let mut n = -radius.clone();
    while n <= radius {
        if f.numerator_at(&n).abs() <= bound && n.abs() > threshold {
            threshold = n.abs();
        }
        n = n + T::one();
    }
    Ok(threshold)
}
