use std::collections::HashMap;

use thiserror::Error;

use super::ast::{Expr, ExprKind, Flag, Recipe, Stmt};
use super::report::Report;
use crate::constructions::{
    corollary_family, cp3_almost_complex, k3_pullback_family, proj_canonical_threefold,
    standard_surface, twistor_threefold, Admission, AsdPolicy,
};
use crate::error::Error;
use crate::invariants::{blow_up, connect_sum_cp2bar, mk_surface, Surface4, ThreeFold, TriState};
use crate::scalar::Scalar;

/// A domain error raised while evaluating one sub-expression.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: in `{at}`: {source}")]
pub struct EvalError {
    pub line: usize,
    /// The sub-expression that failed, printed in recipe syntax.
    pub at: String,
    /// Construction steps completed before the failure.
    pub provenance: Vec<String>,
    #[source]
    pub source: Error,
}

#[derive(Debug, Clone)]
enum Value<T> {
    Surface(Surface4<T>),
    ThreeFold(ThreeFold<T>),
}

#[derive(Debug, Clone)]
struct Evaluated<T> {
    value: Value<T>,
    warnings: Vec<String>,
}

struct Evaluator<T> {
    policy: AsdPolicy,
    env: HashMap<String, Evaluated<T>>,
}

impl<T: Scalar> Evaluator<T> {
    fn surface(&self, e: &Expr<T>) -> Result<(Surface4<T>, Vec<String>), EvalError> {
        match self.eval(e)? {
            Evaluated { value: Value::Surface(s), warnings } => Ok((s, warnings)),
            _ => unreachable!("type-checked recipe"),
        }
    }

    fn threefold(&self, e: &Expr<T>) -> Result<(ThreeFold<T>, Vec<String>), EvalError> {
        match self.eval(e)? {
            Evaluated { value: Value::ThreeFold(x), warnings } => Ok((x, warnings)),
            _ => unreachable!("type-checked recipe"),
        }
    }

    fn eval(&self, e: &Expr<T>) -> Result<Evaluated<T>, EvalError> {
        let fail = |provenance: Vec<String>| {
            move |source: Error| EvalError { line: e.pos.line, at: e.to_string(), provenance, source }
        };
        let (value, warnings) = match &e.kind {
            ExprKind::Var(name) => return Ok(self.env[name].clone()),
            ExprKind::SurfaceLiteral { name, chi, tau, flags } => {
                let has = |f: Flag| flags.contains(&f);
                let sc = if has(Flag::SimplyConnected) {
                    TriState::Yes
                } else if has(Flag::NotSimplyConnected) {
                    TriState::No
                } else {
                    TriState::Unknown
                };
                let s = mk_surface(
                    name,
                    chi.clone(),
                    tau.clone(),
                    has(Flag::Spin) && !has(Flag::NonSpin),
                    has(Flag::Kahler) && !has(Flag::NonKahler),
                    sc,
                    !has(Flag::NonComplex),
                )
                .map_err(fail(vec![]))?;
                (Value::Surface(s), vec![])
            }
            ExprKind::CatalogSurface(m) => {
                let (s, k0) = standard_surface(m, self.policy).map_err(fail(vec![]))?;
                let mut w = vec![];
                if k0.is_none() {
                    w.push(format!("k0({m}) is not tabulated"));
                }
                (Value::Surface(s), w)
            }
            ExprKind::ConnSumCp2bar(child, k) => {
                let (s, w) = self.surface(child)?;
                let t = connect_sum_cp2bar(&s, k).map_err(fail(s.provenance.clone()))?;
                (Value::Surface(t), w)
            }
            ExprKind::Twistor(child) => {
                let (s, mut w) = self.surface(child)?;
                let admission = self.policy.admits(&s).map_err(fail(s.provenance.clone()))?;
                if admission == Admission::Assumed {
                    w.push(format!(
                        "anti-self-dual metric on {} assumed by policy `{}` (unverified)",
                        s.name, self.policy
                    ));
                }
                let z = twistor_threefold(&s, self.policy).map_err(fail(s.provenance.clone()))?;
                (Value::ThreeFold(z), w)
            }
            ExprKind::ProjCanonical(child) => {
                let (s, w) = self.surface(child)?;
                let z = proj_canonical_threefold(&s).map_err(fail(s.provenance.clone()))?;
                (Value::ThreeFold(z), w)
            }
            ExprKind::K3Family(m) => (Value::ThreeFold(k3_pullback_family(m).map_err(fail(vec![]))?), vec![]),
            ExprKind::Cp3Ac(j) => (Value::ThreeFold(cp3_almost_complex(j)), vec![]),
            ExprKind::BlowUp(child, l) => {
                let (x, w) = self.threefold(child)?;
                let y = blow_up(&x, l).map_err(fail(x.provenance.clone()))?;
                (Value::ThreeFold(y), w)
            }
            ExprKind::CorollaryFamily(m, n) => {
                (Value::ThreeFold(corollary_family(m, n).map_err(fail(vec![]))?), vec![])
            }
        };
        Ok(Evaluated { value, warnings })
    }
}

/// Evaluates a recipe, producing one report per `emit`.
pub fn eval_recipe<T: Scalar>(recipe: &Recipe<T>, policy: AsdPolicy) -> Result<Vec<Report<T>>, EvalError> {
    let mut ev = Evaluator { policy, env: HashMap::new() };
    let mut reports = Vec::new();
    for stmt in &recipe.stmts {
        match stmt {
            Stmt::Let { name, expr } => {
                let v = ev.eval(expr)?;
                ev.env.insert(name.clone(), v);
            }
            Stmt::Emit { expr } => {
                let (x, w) = ev.threefold(expr)?;
                reports.push(Report::from_threefold(&x, w));
            }
        }
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::CharNumbers;
    use crate::recipe::parse_recipe;
    use num_rational::Ratio;

    fn run(text: &str, policy: AsdPolicy) -> Result<Vec<Report<i64>>, EvalError> {
        eval_recipe(&parse_recipe(text).unwrap(), policy)
    }

    #[test]
    fn k3_family_report() {
        let r = run("emit k3_family(2)", AsdPolicy::KnownTable).unwrap();
        assert_eq!(r[0].numbers, CharNumbers::new(0, 96, 48));
        assert_eq!(r[0].todd, Ratio::from_integer(4));
        assert!(r[0].spin);
        assert_eq!(r[0].kahler_type, TriState::No);
    }

    #[test]
    fn blown_up_proj_canonical() {
        let r = run(
            "let P = surface(\"CP2\", 3, 1, nonspin, kahler, simply_connected)\nemit blowup(proj_canonical(P), 3)",
            AsdPolicy::KnownTable,
        )
        .unwrap();
        assert_eq!(r[0].numbers, CharNumbers::new(96, 24, 12));
        assert_eq!(r[0].provenance.len(), 3);
    }

    #[test]
    fn realization_recipe() {
        let r = run(
            "let M = connsum_cp2bar(catalog(1), 14)\nlet Z = twistor(M)\nemit blowup(Z, 6)\nemit blowup(proj_canonical(M), 6)",
            AsdPolicy::KnownTable,
        )
        .unwrap();
        assert_eq!(r[0].numbers, CharNumbers::new(-48, 48, 48));
        assert_eq!(r[1].numbers, CharNumbers::new(0, 24, 48));
        assert!(r[0].warnings.is_empty());
    }

    #[test]
    fn unknown_k0_is_policy_error() {
        let err = run("emit twistor(catalog(3))", AsdPolicy::KnownTable).unwrap_err();
        assert_eq!(err.source, Error::UnknownK0 { m: 3.into() });
        assert_eq!(err.at, "twistor(catalog(3))");
        assert!(!err.provenance.is_empty());

        let r = run("emit twistor(catalog(3))", AsdPolicy::Assume).unwrap();
        assert_eq!(r[0].numbers, CharNumbers::new(0, 144, 72));
        assert!(r[0].warnings.iter().any(|w| w.contains("assumed")));

        let err = run("emit twistor(catalog(3))", AsdPolicy::RejectUnknown).unwrap_err();
        assert_eq!(err.at, "catalog(3)");
    }

    #[test]
    fn domain_errors_carry_location() {
        let err = run("let X = cp3_ac(2)\nemit blowup(X, 1)", AsdPolicy::KnownTable).unwrap_err();
        assert_eq!(err.source, Error::AlmostComplexBlowUp);
        assert_eq!(err.line, 2);
        assert_eq!(err.provenance.len(), 1);
        let err = run("emit k3_family(0)", AsdPolicy::KnownTable).unwrap_err();
        assert!(matches!(err.source, Error::NonPositive { .. }));
        let err = run("emit proj_canonical(surface(\"bad\", 5, 1))", AsdPolicy::Assume).unwrap_err();
        assert!(matches!(err.source, Error::NotComplexSurface { .. }));
    }

    #[test]
    fn binding_order_of_independent_lets() {
        let a = run("let A = k3_family(3)\nlet B = catalog(1)\nemit blowup(A, 2)", AsdPolicy::KnownTable).unwrap();
        let b = run("let B = catalog(1)\nlet A = k3_family(3)\nemit blowup(A, 2)", AsdPolicy::KnownTable).unwrap();
        assert_eq!(a, b);
    }
}
