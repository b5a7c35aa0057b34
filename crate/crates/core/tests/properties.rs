//! Property-based law checks: entailment is Tarskian and structural,
//! refutations carry sound witnesses, the two fibred evaluation routes
//! agree on arbitrary formulas, the bridge maps are idempotent typed
//! projections, association behaves as an equivalence, fibred outputs stay
//! on their connective's side, and printing round-trips through the parser.

use std::collections::HashMap;

use proptest::prelude::*;

use matfib::catalog::{self, pairs};
use matfib::fibring::split_tag;
use matfib::identification::{associated, closely_associated};
use matfib::parse::parse_formula;
use matfib::{
    enumerate_admissible_pairs, fibre, sfv_evaluate, star_lambda, star_mu, FibredMatrix, Formula,
    Matrix, Side, Valuation,
};

const VARS: &[&str] = &["p1", "p2", "p3"];

fn cpl() -> Matrix {
    catalog::builtin("CPL").expect("CPL is built in")
}

fn p1() -> Matrix {
    catalog::builtin("P1").expect("P1 is built in")
}

fn fde_j3_fibred() -> FibredMatrix {
    let fde = catalog::builtin("FDE").expect("FDE is built in");
    let j3 = catalog::builtin("J3").expect("J3 is built in");
    fibre(&fde, &j3, &pairs::fde_j3()).expect("the demonstration pair fibres")
}

/// Arbitrary formulas over the matrix's signature and the shared variables.
fn formulas(m: &Matrix, vars: &'static [&'static str]) -> BoxedStrategy<Formula> {
    let entries: Vec<(String, u8)> = m
        .signature()
        .iter()
        .map(|(name, arity)| (name.to_string(), arity))
        .collect();
    let leaf = prop::sample::select(vars.to_vec())
        .prop_map(Formula::var)
        .boxed();
    if entries.is_empty() {
        return leaf;
    }
    leaf.prop_recursive(3, 24, 2, move |inner| {
        let entries = entries.clone();
        prop::sample::select(entries)
            .prop_flat_map(move |(name, arity)| {
                (
                    Just(name),
                    prop::collection::vec(inner.clone(), arity as usize),
                )
            })
            .prop_map(|(name, args)| Formula::app(name, args))
            .boxed()
    })
    .boxed()
}

/// Arbitrary total valuations of the shared variables into the carrier.
fn valuations(m: &Matrix, vars: &'static [&'static str]) -> BoxedStrategy<Valuation> {
    let values: Vec<String> = m.values().to_vec();
    prop::collection::vec(prop::sample::select(values), vars.len())
        .prop_map(move |picked| {
            let mut valuation = Valuation::new();
            for (var, value) in vars.iter().zip(picked) {
                valuation.set(*var, value);
            }
            valuation
        })
        .boxed()
}

/// Replaces variables by their images, leaving unmapped variables alone.
fn substitute_vars(formula: &Formula, sigma: &HashMap<String, Formula>) -> Formula {
    match formula {
        Formula::Var(name) => sigma
            .get(name)
            .cloned()
            .unwrap_or_else(|| Formula::Var(name.clone())),
        Formula::App(name, args) => Formula::App(
            name.clone(),
            args.iter().map(|arg| substitute_vars(arg, sigma)).collect(),
        ),
    }
}

/// Renames every application of `from` to `to`.
fn rename(formula: &Formula, from: &str, to: &str) -> Formula {
    match formula {
        Formula::Var(name) => Formula::Var(name.clone()),
        Formula::App(name, args) => Formula::app(
            if name == from { to } else { name.as_str() },
            args.iter()
                .map(|arg| rename(arg, from, to))
                .collect::<Vec<_>>(),
        ),
    }
}

proptest! {
    // Entailment laws over the two-valued and three-valued matrices.

    #[test]
    fn premises_entail_their_members(
        gamma in prop::collection::vec(formulas(&cpl(), VARS), 1..4),
        pick in any::<prop::sample::Index>(),
    ) {
        let m = cpl();
        let member = gamma[pick.index(gamma.len())].clone();
        prop_assert!(m.entails(&gamma, &member).unwrap().holds());
    }

    #[test]
    fn entailment_is_monotone(
        gamma in prop::collection::vec(formulas(&p1(), VARS), 0..4),
        extra in prop::collection::vec(formulas(&p1(), VARS), 0..3),
        phi in formulas(&p1(), VARS),
    ) {
        let m = p1();
        if m.entails(&gamma, &phi).unwrap().holds() {
            let mut larger = gamma.clone();
            larger.extend(extra);
            prop_assert!(m.entails(&larger, &phi).unwrap().holds());
        }
    }

    #[test]
    fn refutations_carry_sound_witnesses(
        gamma in prop::collection::vec(formulas(&cpl(), VARS), 0..3),
        phi in formulas(&cpl(), VARS),
    ) {
        let m = cpl();
        let verdict = m.entails(&gamma, &phi).unwrap();
        if let Some(witness) = verdict.counterexample() {
            for premise in &gamma {
                let value = m.evaluate(premise, witness).unwrap();
                prop_assert_eq!(m.is_designated(value), Some(true));
            }
            let value = m.evaluate(&phi, witness).unwrap();
            prop_assert_eq!(m.is_designated(value), Some(false));
        }
    }

    #[test]
    fn entailment_is_structural(
        gamma in prop::collection::vec(formulas(&cpl(), VARS), 1..3),
        pick in any::<prop::sample::Index>(),
        images in prop::collection::vec(formulas(&cpl(), VARS), 3),
    ) {
        let m = cpl();
        // A member conclusion guarantees the original sequent holds.
        let phi = gamma[pick.index(gamma.len())].clone();
        let sigma: HashMap<String, Formula> = VARS
            .iter()
            .map(|var| var.to_string())
            .zip(images)
            .collect();
        let mapped_gamma: Vec<Formula> =
            gamma.iter().map(|f| substitute_vars(f, &sigma)).collect();
        let mapped_phi = substitute_vars(&phi, &sigma);
        prop_assert!(m.entails(&mapped_gamma, &mapped_phi).unwrap().holds());
    }

    // Fibred evaluation and bridge laws.

    #[test]
    fn the_two_fibred_evaluation_routes_agree(
        formula in formulas(fde_j3_fibred().matrix(), VARS),
        valuation in valuations(fde_j3_fibred().matrix(), VARS),
    ) {
        let fde = catalog::builtin("FDE").unwrap();
        let j3 = catalog::builtin("J3").unwrap();
        let pair = pairs::fde_j3();
        let fibred = fibre(&fde, &j3, &pair).unwrap();
        let direct = sfv_evaluate(&fde, &j3, &pair, &formula, &valuation)
            .unwrap()
            .to_string();
        let tabled = fibred.matrix().evaluate(&formula, &valuation).unwrap();
        prop_assert_eq!(direct, tabled);
    }

    #[test]
    fn bridge_maps_are_idempotent_typed_projections(
        pair_pick in any::<prop::sample::Index>(),
        value_pick in any::<prop::sample::Index>(),
    ) {
        let fde = catalog::builtin("FDE").unwrap();
        let j3 = catalog::builtin("J3").unwrap();
        let admissible = enumerate_admissible_pairs(&fde, &j3);
        let pair = &admissible[pair_pick.index(admissible.len())];
        let fibred = fibre(&fde, &j3, pair).unwrap();
        let index = value_pick.index(fibred.matrix().value_count());
        let value = fibred.tagged_value(index);

        let lowered = star_mu(&fde, &j3, pair, &value).unwrap();
        let raised = star_lambda(&fde, &j3, pair, &value).unwrap();
        prop_assert_eq!(lowered.side, Side::One);
        prop_assert_eq!(raised.side, Side::Two);
        let lowered_again = star_mu(&fde, &j3, pair, &lowered).unwrap();
        let raised_again = star_lambda(&fde, &j3, pair, &raised).unwrap();
        prop_assert_eq!(lowered_again.to_string(), lowered.to_string());
        prop_assert_eq!(raised_again.to_string(), raised.to_string());

        // On admissible pairs, designation agrees across all three carriers.
        let designated = fibred.matrix().is_designated_index(index);
        prop_assert_eq!(fde.is_designated(&lowered.name), Some(designated));
        prop_assert_eq!(j3.is_designated(&raised.name), Some(designated));
    }

    #[test]
    fn fibred_outputs_keep_their_connectives_side(
        position_pick in any::<prop::sample::Index>(),
        valuation in valuations(fde_j3_fibred().matrix(), VARS),
    ) {
        let fibred = fde_j3_fibred();
        let m = fibred.matrix();
        let position = position_pick.index(m.signature().len());
        let (name, arity) = m.signature().entry(position);
        let args: Vec<Formula> = (0..arity as usize)
            .map(|i| Formula::var(VARS[i]))
            .collect();
        let formula = Formula::app(name, args);
        let value = m.evaluate(&formula, &valuation).unwrap();
        let connective_side = split_tag(name).expect("fibred connectives are tagged").1;
        let value_side = split_tag(value).expect("fibred values are tagged").1;
        prop_assert_eq!(value_side, connective_side);
    }

    // Association and syntax laws.

    #[test]
    fn relabelling_the_swap_pair_stays_associated(
        formula in formulas(fde_j3_fibred().matrix(), VARS),
    ) {
        let fibred = fde_j3_fibred();
        let sig = fibred.matrix().signature();
        let relabeled = rename(&formula, "and@1", "vee@2");
        let witness = associated(sig, &formula, &relabeled, "and@1", "vee@2").unwrap();
        prop_assert!(witness.is_some());
        let chain = witness.unwrap().chain;
        prop_assert_eq!(chain.first(), Some(&formula));
        prop_assert_eq!(chain.last(), Some(&relabeled));
        for window in chain.windows(2) {
            prop_assert!(
                closely_associated(sig, &window[0], &window[1], "and@1", "vee@2").unwrap()
            );
        }
    }

    #[test]
    fn printing_then_parsing_is_identity(
        formula in formulas(fde_j3_fibred().matrix(), VARS),
    ) {
        let fibred = fde_j3_fibred();
        let reparsed = parse_formula(&formula.to_string(), fibred.matrix().signature()).unwrap();
        prop_assert_eq!(reparsed, formula);
    }

    #[test]
    fn collected_variables_are_sorted_and_unique(
        formula in formulas(&cpl(), VARS),
    ) {
        let vars = formula.vars();
        let mut normalized = vars.clone();
        normalized.sort();
        normalized.dedup();
        prop_assert_eq!(vars, normalized);
    }
}
