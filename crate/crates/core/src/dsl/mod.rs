//! Scenario files: a small text format (extension `.mwc`) for declaring
//! wall-crossing computations without recompiling.
//!
//! A scenario is a sequence of statements:
//!
//! ```text
//! # line comment
//! let x = proj(2) * proj(14)
//! wall 18 { plus = bundle(proj(7), x); minus = bundle(proj(3), x - proj(2) * proj(9)) }
//! model M = poly"1 + p" walls
//! expect M == poly"1 + p + p^2"
//! ```
//!
//! `let` binds a name to an expression, `wall` declares the strata present
//! just above (`plus`) and just below (`minus`) one wall, `model` names a
//! result (with the `walls` suffix the declared wall deltas are added to
//! the base expression), and `expect` pins a model to a polynomial
//! literal. Identifiers must be declared before use; expectations must
//! reference a declared model.

mod parse;

pub use parse::{parse_scenario, ParseError};

use serde::{Deserialize, Serialize};

use crate::motives::AtomSpec;
use crate::poly::Polynomial;
use crate::strata::{self, Environment, SpaceExpr, WallTerm};

/// A parsed scenario: ordered bindings, wall terms, named models and the
/// expected polynomials to verify them against.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Scenario {
    pub name: String,
    pub bindings: Vec<(String, SpaceExpr)>,
    pub walls: Vec<WallTerm>,
    pub models: Vec<ModelDef>,
    pub expectations: Vec<(String, Polynomial)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelDef {
    pub name: String,
    pub expr: SpaceExpr,
    /// When set, the scenario's wall deltas are added to the base value.
    pub with_walls: bool,
}

/// Outcome of one verification check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: Option<String>,
    pub computed: Option<String>,
    /// `computed − expected`, printed as a polynomial literal.
    pub residual: Option<String>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub scenario: String,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

impl Check {
    pub fn comparison(
        name: impl Into<String>,
        expected: &Polynomial,
        computed: &Polynomial,
    ) -> Check {
        let residual = computed - expected;
        Check {
            name: name.into(),
            expected: Some(expected.to_string()),
            computed: Some(computed.to_string()),
            residual: Some(residual.to_string()),
            pass: residual.is_zero(),
            error: None,
        }
    }
}

/// Evaluates every binding and model of a scenario and compares models
/// against their expectations. Evaluation errors are recorded on the
/// affected model and do not abort the other checks.
pub fn run_scenario(scenario: &Scenario) -> VerificationReport {
    let mut env = Environment::new();
    for (name, expr) in &scenario.bindings {
        let value = strata::eval_expr(expr, &env);
        // duplicates are rejected at parse time; keep the first binding if a
        // hand-built scenario carries one anyway
        let _ = env.bind(name.clone(), value);
    }

    let mut checks = Vec::new();
    for model in &scenario.models {
        let computed = strata::eval_expr(&model.expr, &env).and_then(|base| {
            if model.with_walls {
                strata::assemble(&base, &scenario.walls, &env)
            } else {
                Ok(base)
            }
        });
        let expected = scenario
            .expectations
            .iter()
            .find(|(name, _)| name == &model.name)
            .map(|(_, p)| p);
        checks.push(match (computed, expected) {
            (Ok(value), Some(expected)) => Check::comparison(&model.name, expected, &value),
            (Ok(value), None) => Check {
                name: model.name.clone(),
                expected: None,
                computed: Some(value.to_string()),
                residual: None,
                pass: true,
                error: None,
            },
            (Err(err), expected) => Check {
                name: model.name.clone(),
                expected: expected.map(ToString::to_string),
                computed: None,
                residual: None,
                pass: false,
                error: Some(err.to_string()),
            },
        });
    }

    // expectations that reference no model (possible only in hand-built
    // scenarios; the parser rejects them)
    for (name, expected) in &scenario.expectations {
        if !scenario.models.iter().any(|m| &m.name == name) {
            checks.push(Check {
                name: name.clone(),
                expected: Some(expected.to_string()),
                computed: None,
                residual: None,
                pass: false,
                error: Some(format!("unknown model `{name}`")),
            });
        }
    }

    VerificationReport {
        scenario: scenario.name.clone(),
        checks,
    }
}

// ---------------------------------------------------------------------------
// Canonical printer
// ---------------------------------------------------------------------------

impl Scenario {
    /// Prints the scenario in the canonical source form; parsing the output
    /// yields a structurally identical scenario.
    pub fn to_source(&self) -> String {
        let mut out = String::new();
        for (name, expr) in &self.bindings {
            out.push_str("let ");
            out.push_str(name);
            out.push_str(" = ");
            write_expr(&mut out, expr, 1);
            out.push('\n');
        }
        for wall in &self.walls {
            out.push_str(&format!("wall {} {{ plus = ", wall.alpha));
            write_strata(&mut out, &wall.plus);
            out.push_str("; minus = ");
            write_strata(&mut out, &wall.minus);
            out.push_str(" }\n");
        }
        for model in &self.models {
            out.push_str("model ");
            out.push_str(&model.name);
            out.push_str(" = ");
            write_expr(&mut out, &model.expr, 1);
            if model.with_walls {
                out.push_str(" walls");
            }
            out.push('\n');
        }
        for (name, expected) in &self.expectations {
            out.push_str(&format!("expect {name} == poly\"{expected}\"\n"));
        }
        out
    }
}

fn write_strata(out: &mut String, strata: &[SpaceExpr]) {
    // a `+` printed at the top level of an item would merge with the list
    // separator on reparse; only the left spine of an additive chain can
    // expose one
    fn exposes_plus(e: &SpaceExpr) -> bool {
        match e {
            SpaceExpr::Sum(..) => true,
            SpaceExpr::Difference(a, _) => exposes_plus(a),
            _ => false,
        }
    }
    for (i, stratum) in strata.iter().enumerate() {
        if i > 0 {
            out.push_str(" + ");
        }
        write_expr(out, stratum, if exposes_plus(stratum) { 3 } else { 1 });
    }
}

/// Writes `expr`, parenthesising when its precedence is below `min_prec`
/// (1 = additive, 2 = multiplicative, 3 = atomic).
fn write_expr(out: &mut String, expr: &SpaceExpr, min_prec: u8) {
    let prec = match expr {
        SpaceExpr::Sum(..) | SpaceExpr::Difference(..) => 1,
        SpaceExpr::Product(..) => 2,
        _ => 3,
    };
    if prec < min_prec {
        out.push('(');
        write_expr(out, expr, 1);
        out.push(')');
        return;
    }
    match expr {
        SpaceExpr::Atom(atom) => write_atom(out, atom),
        SpaceExpr::Literal(p) => out.push_str(&format!("poly\"{p}\"")),
        SpaceExpr::Ident(name) => out.push_str(name),
        SpaceExpr::Sum(a, b) => {
            write_expr(out, a, 1);
            out.push_str(" + ");
            write_expr(out, b, 2);
        }
        SpaceExpr::Difference(a, b) => {
            write_expr(out, a, 1);
            out.push_str(" - ");
            write_expr(out, b, 2);
        }
        SpaceExpr::Product(a, b) => {
            write_expr(out, a, 2);
            out.push_str(" * ");
            write_expr(out, b, 3);
        }
        SpaceExpr::Bundle { fiber, base } => write_call(out, "bundle", &[fiber, base]),
        SpaceExpr::Sym2(e) => write_call(out, "sym2", &[e]),
        SpaceExpr::Wedge2(e) => write_call(out, "wedge2", &[e]),
        SpaceExpr::Sym2OffDiag(e) => write_call(out, "sym2od", &[e]),
        SpaceExpr::EquivariantSquare {
            fiber,
            base_plus,
            base_minus,
        } => write_call(out, "equivsq", &[fiber, base_plus, base_minus]),
    }
}

fn write_call(out: &mut String, name: &str, args: &[&SpaceExpr]) {
    out.push_str(name);
    out.push('(');
    for (i, arg) in args.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write_expr(out, arg, 1);
    }
    out.push(')');
}

fn write_atom(out: &mut String, atom: &AtomSpec) {
    match *atom {
        AtomSpec::Projective(n) => out.push_str(&format!("proj({n})")),
        AtomSpec::Affine(n) => out.push_str(&format!("aff({n})")),
        // a point is P^0; the grammar has no separate head for it
        AtomSpec::Point => out.push_str("proj(0)"),
        AtomSpec::Grassmannian { k, n } => out.push_str(&format!("gr({k}, {n})")),
        AtomSpec::HilbP2(n) => out.push_str(&format!("hilb({n})")),
        AtomSpec::RelHilbert { d, n } => out.push_str(&format!("relhilb({d}, {n})")),
    }
}
