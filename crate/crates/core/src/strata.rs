//! Expression calculus over the atom spaces.
//!
//! Sums and differences implement additivity over closed decompositions,
//! products and bundles implement multiplicativity over Zariski-locally
//! trivial fibrations, and the equivariant square handles the one
//! fibration in scope that is *not* locally trivial: a fiber-square total
//! space over a free Z2-quotient base, whose class is
//! `invariant · Sym²(fiber) + anti-invariant · Λ²(fiber)`.

use std::collections::BTreeMap;

use num_rational::Ratio;
use thiserror::Error;

use crate::motives::{self, AtomError, AtomSpec};
use crate::poly::Polynomial;

/// An expression tree denoting the class of a stratified space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpaceExpr {
    Atom(AtomSpec),
    Literal(Polynomial),
    Ident(String),
    Sum(Box<SpaceExpr>, Box<SpaceExpr>),
    Difference(Box<SpaceExpr>, Box<SpaceExpr>),
    Product(Box<SpaceExpr>, Box<SpaceExpr>),
    /// A fibration with the given fiber and base. Evaluates exactly like
    /// `Product`; the distinct node kind exists so scenario files document
    /// which factor is the fiber.
    Bundle {
        fiber: Box<SpaceExpr>,
        base: Box<SpaceExpr>,
    },
    Sym2(Box<SpaceExpr>),
    Wedge2(Box<SpaceExpr>),
    Sym2OffDiag(Box<SpaceExpr>),
    /// Fiber-square bundle over a free Z2-quotient. The two base inputs are
    /// the invariant and anti-invariant classes of the double cover, supplied
    /// explicitly.
    EquivariantSquare {
        fiber: Box<SpaceExpr>,
        base_plus: Box<SpaceExpr>,
        base_minus: Box<SpaceExpr>,
    },
}

impl SpaceExpr {
    pub fn proj(n: u32) -> Self {
        SpaceExpr::Atom(AtomSpec::Projective(n))
    }

    pub fn aff(n: u32) -> Self {
        SpaceExpr::Atom(AtomSpec::Affine(n))
    }

    pub fn gr(k: u32, n: u32) -> Self {
        SpaceExpr::Atom(AtomSpec::Grassmannian { k, n })
    }

    pub fn hilb(n: u32) -> Self {
        SpaceExpr::Atom(AtomSpec::HilbP2(n))
    }

    pub fn relhilb(d: u32, n: u32) -> Self {
        SpaceExpr::Atom(AtomSpec::RelHilbert { d, n })
    }

    pub fn lit(p: Polynomial) -> Self {
        SpaceExpr::Literal(p)
    }

    pub fn ident(name: impl Into<String>) -> Self {
        SpaceExpr::Ident(name.into())
    }

    pub fn bundle(fiber: SpaceExpr, base: SpaceExpr) -> Self {
        SpaceExpr::Bundle {
            fiber: Box::new(fiber),
            base: Box::new(base),
        }
    }

    pub fn sym2(e: SpaceExpr) -> Self {
        SpaceExpr::Sym2(Box::new(e))
    }

    pub fn wedge2(e: SpaceExpr) -> Self {
        SpaceExpr::Wedge2(Box::new(e))
    }

    pub fn sym2_off_diag(e: SpaceExpr) -> Self {
        SpaceExpr::Sym2OffDiag(Box::new(e))
    }

    pub fn equivariant_square(
        fiber: SpaceExpr,
        base_plus: SpaceExpr,
        base_minus: SpaceExpr,
    ) -> Self {
        SpaceExpr::EquivariantSquare {
            fiber: Box::new(fiber),
            base_plus: Box::new(base_plus),
            base_minus: Box::new(base_minus),
        }
    }
}

impl std::ops::Add for SpaceExpr {
    type Output = SpaceExpr;
    fn add(self, rhs: SpaceExpr) -> SpaceExpr {
        SpaceExpr::Sum(Box::new(self), Box::new(rhs))
    }
}

impl std::ops::Sub for SpaceExpr {
    type Output = SpaceExpr;
    fn sub(self, rhs: SpaceExpr) -> SpaceExpr {
        SpaceExpr::Difference(Box::new(self), Box::new(rhs))
    }
}

impl std::ops::Mul for SpaceExpr {
    type Output = SpaceExpr;
    fn mul(self, rhs: SpaceExpr) -> SpaceExpr {
        SpaceExpr::Product(Box::new(self), Box::new(rhs))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Atom(#[from] AtomError),
    #[error("unbound identifier `{0}`")]
    Unbound(String),
    #[error("duplicate identifier `{0}`")]
    Duplicate(String),
    #[error("in binding `{name}`: {source}")]
    Binding {
        name: String,
        #[source]
        source: Box<EvalError>,
    },
}

/// Named polynomial bindings for identifier resolution. A binding that
/// failed to evaluate is stored with its error so later lookups surface
/// the root cause.
#[derive(Debug, Clone, Default)]
pub struct Environment {
    map: BTreeMap<String, Result<Polynomial, EvalError>>,
}

impl Environment {
    pub fn new() -> Self {
        Environment::default()
    }

    /// Binds a name; shadowing within one environment is an error.
    pub fn bind(
        &mut self,
        name: impl Into<String>,
        value: Result<Polynomial, EvalError>,
    ) -> Result<(), EvalError> {
        let name = name.into();
        if self.map.contains_key(&name) {
            return Err(EvalError::Duplicate(name));
        }
        self.map.insert(name, value);
        Ok(())
    }

    pub fn bind_value(
        &mut self,
        name: impl Into<String>,
        value: Polynomial,
    ) -> Result<(), EvalError> {
        self.bind(name, Ok(value))
    }

    pub fn lookup(&self, name: &str) -> Result<Polynomial, EvalError> {
        match self.map.get(name) {
            None => Err(EvalError::Unbound(name.to_string())),
            Some(Ok(p)) => Ok(p.clone()),
            Some(Err(e)) => Err(EvalError::Binding {
                name: name.to_string(),
                source: Box::new(e.clone()),
            }),
        }
    }
}

/// Evaluates an expression in the given environment. Children are
/// evaluated left to right so error messages are reproducible.
pub fn eval_expr(expr: &SpaceExpr, env: &Environment) -> Result<Polynomial, EvalError> {
    match expr {
        SpaceExpr::Atom(atom) => Ok(atom.eval()?),
        SpaceExpr::Literal(p) => Ok(p.clone()),
        SpaceExpr::Ident(name) => env.lookup(name),
        SpaceExpr::Sum(a, b) => Ok(&eval_expr(a, env)? + &eval_expr(b, env)?),
        SpaceExpr::Difference(a, b) => Ok(&eval_expr(a, env)? - &eval_expr(b, env)?),
        SpaceExpr::Product(a, b) => Ok(&eval_expr(a, env)? * &eval_expr(b, env)?),
        SpaceExpr::Bundle { fiber, base } => Ok(&eval_expr(fiber, env)? * &eval_expr(base, env)?),
        SpaceExpr::Sym2(e) => Ok(motives::sym2(&eval_expr(e, env)?)),
        SpaceExpr::Wedge2(e) => Ok(motives::wedge2(&eval_expr(e, env)?)),
        SpaceExpr::Sym2OffDiag(e) => Ok(motives::sym2_off_diag(&eval_expr(e, env)?)),
        SpaceExpr::EquivariantSquare {
            fiber,
            base_plus,
            base_minus,
        } => {
            let y = eval_expr(fiber, env)?;
            let plus = eval_expr(base_plus, env)?;
            let minus = eval_expr(base_minus, env)?;
            Ok(&(&plus * &motives::sym2(&y)) + &(&minus * &motives::wedge2(&y)))
        }
    }
}

/// One wall: the value of the stability parameter where it occurs, and the
/// strata present just above (`plus`) and just below (`minus`) it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallTerm {
    pub alpha: Ratio<i64>,
    pub plus: Vec<SpaceExpr>,
    pub minus: Vec<SpaceExpr>,
}

impl WallTerm {
    pub fn new(alpha: Ratio<i64>, plus: Vec<SpaceExpr>, minus: Vec<SpaceExpr>) -> Self {
        WallTerm { alpha, plus, minus }
    }
}

/// The class change across one wall: `Σ plus − Σ minus`.
pub fn wall_delta(wall: &WallTerm, env: &Environment) -> Result<Polynomial, EvalError> {
    let mut delta = Polynomial::zero();
    for stratum in &wall.plus {
        delta = &delta + &eval_expr(stratum, env)?;
    }
    for stratum in &wall.minus {
        delta = &delta - &eval_expr(stratum, env)?;
    }
    Ok(delta)
}

/// Assembles a model from its base class and a sequence of walls:
/// `base + Σ wall_delta`.
pub fn assemble(
    base: &Polynomial,
    walls: &[WallTerm],
    env: &Environment,
) -> Result<Polynomial, EvalError> {
    let mut total = base.clone();
    for wall in walls {
        total = &total + &wall_delta(wall, env)?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use SpaceExpr as E;

    fn poly(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    fn eval(e: &SpaceExpr) -> Polynomial {
        eval_expr(e, &Environment::new()).unwrap()
    }

    #[test]
    fn bundle_over_product_multiplies() {
        let e = E::bundle(E::proj(7), E::proj(2) * E::proj(14));
        let expected =
            &(&motives::projective(7) * &motives::projective(2)) * &motives::projective(14);
        assert_eq!(eval(&e), expected);
    }

    #[test]
    fn cell_subtraction() {
        let e = E::proj(14) - E::proj(9);
        assert_eq!(eval(&e), poly("p^10 + p^11 + p^12 + p^13 + p^14"));
    }

    #[test]
    fn equivariant_square_example() {
        // invariant part (P^2 x P^2 - diag)/Z2, anti-invariant the rest,
        // fiber P^3
        let splus = E::sym2_off_diag(E::proj(2));
        let sminus = (E::proj(2) * E::proj(2) - E::proj(2)) - E::sym2_off_diag(E::proj(2));
        let e = E::equivariant_square(E::proj(3), splus, sminus);
        let expected = &(&poly("p^2 + p^3 + p^4") * &motives::sym2(&motives::projective(3)))
            + &(&poly("p + p^2 + p^3") * &motives::wedge2(&motives::projective(3)));
        assert_eq!(eval(&e), expected);
        assert_eq!(
            eval(&e),
            poly("2p^2 + 4p^3 + 8p^4 + 9p^5 + 10p^6 + 7p^7 + 5p^8 + 2p^9 + p^10")
        );
    }

    #[test]
    fn equivariant_square_with_zero_antiinvariant_is_untwisted() {
        let e = E::equivariant_square(
            E::proj(3),
            E::sym2_off_diag(E::proj(2)),
            E::lit(Polynomial::zero()),
        );
        let untwisted = E::sym2_off_diag(E::proj(2)) * E::sym2(E::proj(3));
        assert_eq!(eval(&e), eval(&untwisted));
    }

    #[test]
    fn equivariant_square_euler_factorisation() {
        let e = E::equivariant_square(E::proj(3), E::proj(5), E::proj(1) * E::proj(2));
        let one = BigInt::from(1);
        let e_plus = motives::projective(5).eval(&one);
        let e_minus = (&motives::projective(1) * &motives::projective(2)).eval(&one);
        let e_sym = motives::sym2(&motives::projective(3)).eval(&one);
        let e_wedge = motives::wedge2(&motives::projective(3)).eval(&one);
        assert_eq!(eval(&e).eval(&one), e_plus * e_sym + e_minus * e_wedge);
    }

    #[test]
    fn identifiers_resolve_through_environment() {
        let mut env = Environment::new();
        env.bind_value("x", poly("1 + p")).unwrap();
        assert_eq!(
            eval_expr(&(E::ident("x") * E::ident("x")), &env).unwrap(),
            poly("1 + 2p + p^2")
        );
        let err = eval_expr(&E::ident("y"), &env).unwrap_err();
        assert_eq!(err, EvalError::Unbound("y".into()));
    }

    #[test]
    fn failed_binding_surfaces_root_cause() {
        let mut env = Environment::new();
        env.bind(
            "bad",
            Err(EvalError::from(AtomError::RelHilbertNotBundle {
                d: 5,
                n: 7,
            })),
        )
        .unwrap();
        let err = eval_expr(&E::ident("bad"), &env).unwrap_err();
        assert!(err.to_string().contains("in binding `bad`"));
        assert!(err.to_string().contains("not a bundle"));
    }

    #[test]
    fn shadowing_is_rejected() {
        let mut env = Environment::new();
        env.bind_value("x", poly("1")).unwrap();
        assert_eq!(
            env.bind_value("x", poly("p")).unwrap_err(),
            EvalError::Duplicate("x".into())
        );
    }

    #[test]
    fn atom_errors_propagate() {
        let e = E::proj(1) * E::relhilb(5, 7);
        let err = eval_expr(&e, &Environment::new()).unwrap_err();
        assert!(matches!(err, EvalError::Atom(_)));
    }

    #[test]
    fn wall_delta_examples() {
        let env = Environment::new();
        let base = E::proj(2) * E::relhilb(4, 1);
        let wall = WallTerm::new(
            Ratio::from_integer(13),
            vec![E::bundle(E::proj(6), base.clone())],
            vec![E::bundle(E::proj(3), base)],
        );
        let delta = wall_delta(&wall, &env).unwrap();
        let expected = &(&(&poly("p^4 + p^5 + p^6") * &motives::projective(2))
            * &motives::projective(13))
            * &motives::projective(2);
        assert_eq!(delta, expected);
        assert_eq!(delta.eval_i(1), BigInt::from(378));

        let half = WallTerm::new(
            Ratio::new(1, 2),
            vec![E::bundle(E::proj(6), E::proj(5) * E::relhilb(3, 1))],
            vec![E::bundle(E::proj(5), E::proj(5) * E::relhilb(3, 1))],
        );
        let delta = wall_delta(&half, &env).unwrap();
        let expected = &(&(&poly("p^6") * &motives::projective(5)) * &motives::projective(8))
            * &motives::projective(2);
        assert_eq!(delta, expected);
        assert_eq!(delta.eval_i(1), BigInt::from(162));

        let empty = WallTerm::new(Ratio::from_integer(1), vec![], vec![]);
        assert!(wall_delta(&empty, &env).unwrap().is_zero());
    }

    #[test]
    fn wall_delta_of_identical_sides_vanishes() {
        let env = Environment::new();
        let strata = vec![E::bundle(E::proj(3), E::hilb(2)), E::gr(2, 4)];
        let wall = WallTerm::new(Ratio::from_integer(3), strata.clone(), strata);
        assert!(wall_delta(&wall, &env).unwrap().is_zero());
    }

    #[test]
    fn assemble_with_no_walls_is_base() {
        let base = poly("1 + 5p");
        assert_eq!(assemble(&base, &[], &Environment::new()).unwrap(), base);
    }
}
