//! Acceptance suite: one test per criterion, each consuming the matching
//! bundled verification check from `matfib::verification`.
//!
//! A failing test prints the check's details, which carry the complete
//! analysis of the disagreement (the audited case, the expected value, and
//! the arithmetic behind it). Two criteria are currently red and documented
//! as such: the mixed excluded-middle survey (criterion 5b) and the
//! sufficient-condition survey over the three-valued conjunctions
//! (criterion 8c); see the README for the underlying table arithmetic.

use matfib::verification::{self, CheckResult};

fn assert_green(result: CheckResult) {
    assert!(result.passed, "{result}");
}

#[test]
fn criterion_01_example_evaluation() {
    assert_green(verification::check_example_evaluation());
}

#[test]
fn criterion_02_fibred_table_cells() {
    assert_green(verification::check_fibred_table_cells());
}

#[test]
fn criterion_03_evaluator_agreement() {
    assert_green(verification::check_evaluator_agreement());
}

#[test]
fn criterion_04_admissible_pair_count() {
    assert_green(verification::check_admissible_pair_count());
}

#[test]
fn criterion_05a_pure_excluded_middle_survey() {
    assert_green(verification::check_lem_survey_one());
}

#[test]
fn criterion_05b_mixed_excluded_middle_survey() {
    assert_green(verification::check_lem_survey_two());
}

#[test]
fn criterion_06_strong_extension_counterexample() {
    assert_green(verification::check_strong_extension_counterexample());
}

#[test]
fn criterion_07_conservativity_suite() {
    assert_green(verification::check_conservativity_suite());
}

#[test]
fn criterion_08a_two_valued_identification() {
    assert_green(verification::check_identification_two_valued());
}

#[test]
fn criterion_08b_conjunction_identification() {
    assert_green(verification::check_identification_conjunctive());
}

#[test]
fn criterion_08c_sufficient_condition_survey() {
    assert_green(verification::check_identification_theorem_condition());
}

#[test]
fn criterion_08d_implicative_counterexample() {
    assert_green(verification::check_identification_implicative_counterexample());
}

#[test]
fn criterion_09_hom_equation_pin() {
    assert_green(verification::check_hom_equation_pin());
}

#[test]
fn criterion_10_presentation_invariance() {
    assert_green(verification::check_presentation_invariance());
}

#[test]
fn criterion_11_property_suite() {
    assert_green(verification::check_property_suite());
}

#[test]
fn the_bundle_reports_every_check_once_in_order() {
    let results = verification::run_all();
    let labels: Vec<&str> = results.iter().map(|r| r.label).collect();
    assert_eq!(
        labels,
        [
            "example-evaluation",
            "fibred-table-cells",
            "evaluator-agreement",
            "admissible-pair-count",
            "lem-survey-one",
            "lem-survey-two",
            "strong-extension-counterexample",
            "conservativity-suite",
            "identification-two-valued",
            "identification-conjunctive",
            "identification-theorem-condition",
            "identification-implicative-counterexample",
            "hom-equation-pin",
            "presentation-invariance",
            "property-suite",
        ]
    );
    for result in &results {
        assert!(!result.details.is_empty(), "{} has empty details", result.label);
    }
}
