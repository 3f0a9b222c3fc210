//! Shared proptest generators for the property and acceptance suites.
#![allow(dead_code)] // each test target compiles its own copy

use mwc_core::poly::Polynomial;
use mwc_core::strata::{SpaceExpr, WallTerm};
use mwc_core::{ModelDef, Scenario};
use num_rational::Ratio;
use proptest::prelude::*;

pub fn arb_poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(-9i64..=9, 0..=10).prop_map(Polynomial::from_coeffs)
}

pub fn arb_small_poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(-4i64..=4, 0..=4).prop_map(Polynomial::from_coeffs)
}

/// Closed expression trees (no identifiers); every atom is within its
/// validity range, so evaluation cannot fail.
pub fn arb_closed_expr() -> impl Strategy<Value = SpaceExpr> {
    arb_expr_over(Vec::new())
}

/// Expression trees whose identifier leaves are drawn from `scope`.
pub fn arb_expr_over(scope: Vec<String>) -> BoxedStrategy<SpaceExpr> {
    let mut leaves = vec![
        (0u32..=6).prop_map(SpaceExpr::proj).boxed(),
        (0u32..=4).prop_map(SpaceExpr::aff).boxed(),
        (0u32..=5)
            .prop_flat_map(|n| (0..=n, Just(n)))
            .prop_map(|(k, n)| SpaceExpr::gr(k, n))
            .boxed(),
        (0u32..=3).prop_map(SpaceExpr::hilb).boxed(),
        (1u32..=4)
            .prop_flat_map(|d| (Just(d), 0..=d))
            .prop_map(|(d, n)| SpaceExpr::relhilb(d, n))
            .boxed(),
        arb_small_poly().prop_map(SpaceExpr::lit).boxed(),
    ];
    if !scope.is_empty() {
        leaves.push(
            prop::sample::select(scope)
                .prop_map(SpaceExpr::ident)
                .boxed(),
        );
    }
    let leaf = prop::strategy::Union::new(leaves);
    leaf.prop_recursive(3, 20, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a + b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a - b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a * b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| SpaceExpr::bundle(a, b)),
            inner.clone().prop_map(SpaceExpr::sym2),
            inner.clone().prop_map(SpaceExpr::wedge2),
            inner.clone().prop_map(SpaceExpr::sym2_off_diag),
            (inner.clone(), inner.clone(), inner)
                .prop_map(|(y, a, b)| SpaceExpr::equivariant_square(y, a, b)),
        ]
    })
    .boxed()
}

pub fn arb_alpha() -> impl Strategy<Value = Ratio<i64>> {
    (1i64..=30, 1i64..=4).prop_map(|(n, d)| Ratio::new(n, d))
}

/// Well-formed scenarios: binding `i` may reference bindings `0..i`, walls
/// and models may reference any binding, expectations reference declared
/// models.
pub fn arb_scenario() -> impl Strategy<Value = Scenario> {
    (0usize..=3).prop_flat_map(|n_bindings| {
        let names: Vec<String> = (0..n_bindings).map(|i| format!("b{i}")).collect();
        let binding_exprs: Vec<BoxedStrategy<SpaceExpr>> = (0..n_bindings)
            .map(|i| arb_expr_over(names[..i].to_vec()))
            .collect();
        let full_scope = names.clone();
        let walls = prop::collection::vec(
            (
                arb_alpha(),
                prop::collection::vec(arb_expr_over(full_scope.clone()), 1..=2),
                prop::collection::vec(arb_expr_over(full_scope.clone()), 1..=2),
            )
                .prop_map(|(alpha, plus, minus)| WallTerm::new(alpha, plus, minus)),
            0..=2,
        );
        let models =
            prop::collection::vec((arb_expr_over(full_scope.clone()), any::<bool>()), 0..=2);
        let expectations = prop::collection::vec(arb_small_poly(), 0..=2);
        (Just(names), binding_exprs, walls, models, expectations).prop_map(
            |(names, binding_exprs, walls, models, expectations)| {
                let models: Vec<ModelDef> = models
                    .into_iter()
                    .enumerate()
                    .map(|(i, (expr, with_walls))| ModelDef {
                        name: format!("m{i}"),
                        expr,
                        with_walls,
                    })
                    .collect();
                let expectations = expectations
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| *i < models.len())
                    .map(|(i, p)| (format!("m{i}"), p))
                    .collect();
                Scenario {
                    name: String::new(),
                    bindings: names.into_iter().zip(binding_exprs).collect(),
                    walls,
                    models,
                    expectations,
                }
            },
        )
    })
}
