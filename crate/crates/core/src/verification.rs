//! Bundled verification checks over the catalog systems.
//!
//! Each check builds its own matrices, runs one documented scenario, and
//! compares the library's answers against expectations derived by an
//! independent route (hand computation on the tables, a closed-form count,
//! or a second evaluation strategy). `run_all` executes every check and is
//! what the `verify-paper` CLI subcommand prints; the acceptance tests
//! consume the same results one scenario at a time.
//!
//! Two checks are expected to fail and say so in their details: the mixed
//! excluded-middle survey (`lem-survey-two`) and the sufficient-condition
//! survey over the three-valued conjunctions (`identification-theorem-condition`).
//! Both record expectations that the underlying tables genuinely refute;
//! the details explain the arithmetic.

use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::catalog::{self, pairs};
use crate::clones::{clone_upto, same_presentation, term_function, translate};
use crate::closure::{assignment_valuation, enumerate_states};
use crate::conservativity::{
    check_strong_conservative, check_weak_conservative, lem_fde_j3_survey,
};
use crate::fibring::{
    count_admissible_pairs, enumerate_admissible_pairs, fibre, is_admissible, sfv_evaluate,
    split_tag, star_lambda, star_mu, tag_formula, tag_name, FibredMatrix, FibringPair, Side,
};
use crate::formula::Formula;
use crate::identification::{
    associated, close_pair_states, closely_associated, hom_violation, identifies, is_strict_hom,
    theorem_sufficient, IdentificationMode,
};
use crate::matrix::{Matrix, Valuation};
use crate::parse::parse_formula;
use crate::signature::Signature;
use crate::{Error, Result};

/// Outcome of one verification check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    /// Stable machine-friendly name of the check.
    pub label: &'static str,
    /// Whether every audited case agreed with the expectation.
    pub passed: bool,
    /// Human-readable summary, or the first few disagreements.
    pub details: String,
}

impl std::fmt::Display for CheckResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let verdict = if self.passed { "pass" } else { "FAIL" };
        write!(f, "{verdict}  {}  {}", self.label, self.details)
    }
}

/// How many failing cases a check reports verbatim before truncating.
const MAX_REPORTED_FAILURES: usize = 5;

/// Accumulates per-case verdicts inside one check.
struct Audit {
    cases: usize,
    failed: usize,
    reported: Vec<String>,
}

impl Audit {
    fn new() -> Self {
        Audit { cases: 0, failed: 0, reported: Vec::new() }
    }

    /// Records one case; the context closure is only rendered on failure.
    fn check(&mut self, ok: bool, context: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
            if self.reported.len() < MAX_REPORTED_FAILURES {
                self.reported.push(context());
            }
        }
    }

    fn finish(self, label: &'static str, summary: impl Into<String>) -> CheckResult {
        if self.failed == 0 {
            CheckResult {
                label,
                passed: true,
                details: format!("{} ({} cases)", summary.into(), self.cases),
            }
        } else {
            CheckResult {
                label,
                passed: false,
                details: format!(
                    "{} of {} cases failed: {}",
                    self.failed,
                    self.cases,
                    self.reported.join("; ")
                ),
            }
        }
    }
}

/// Runs a check body, converting an early error into a failed result.
fn guarded(label: &'static str, run: impl FnOnce() -> Result<CheckResult>) -> CheckResult {
    match run() {
        Ok(result) => result,
        Err(error) => CheckResult {
            label,
            passed: false,
            details: format!("did not finish: {error}"),
        },
    }
}

/// Runs every verification check in a stable order.
pub fn run_all() -> Vec<CheckResult> {
    vec![
        check_example_evaluation(),
        check_fibred_table_cells(),
        check_evaluator_agreement(),
        check_admissible_pair_count(),
        check_lem_survey_one(),
        check_lem_survey_two(),
        check_strong_extension_counterexample(),
        check_conservativity_suite(),
        check_identification_two_valued(),
        check_identification_conjunctive(),
        check_identification_theorem_condition(),
        check_identification_implicative_counterexample(),
        check_hom_equation_pin(),
        check_presentation_invariance(),
        check_property_suite(),
    ]
}

fn require_builtin(name: &str) -> Result<Matrix> {
    catalog::builtin(name).ok_or_else(|| Error::unsupported(format!("builtin {name} is missing")))
}

/// The demonstration fibring: Sette's P1 as the first component, classical
/// logic presented by negation and conjunction as the second, with the
/// designation-collapsing pair between them.
fn demo_p1_cpl() -> Result<(Matrix, Matrix, FibringPair, FibredMatrix)> {
    let m1 = require_builtin("P1")?;
    let m2 = require_builtin("CPLand")?;
    let pair = pairs::p1_cpl();
    let fibred = fibre(&m1, &m2, &pair)?;
    Ok((m1, m2, pair, fibred))
}

/// Advances `digits` as a base-`base` odometer (last digit fastest).
fn bump(digits: &mut [usize], base: usize) -> bool {
    for digit in digits.iter_mut().rev() {
        *digit += 1;
        if *digit < base {
            return true;
        }
        *digit = 0;
    }
    false
}

/// The hand-walked evaluation: `p imp (neg r and (q and neg r))` with the
/// implication and first negation from P1, everything else classical, lands
/// on F by both evaluation routes.
pub fn check_example_evaluation() -> CheckResult {
    guarded("example-evaluation", || {
        let (p1, cpl, pair, fibred) = demo_p1_cpl()?;
        let formula = parse_formula(
            "impP1@1(p,and@2(negP1@1(r),and@2(q,neg@2(r))))",
            fibred.matrix().signature(),
        )?;
        let mut valuation = Valuation::new();
        valuation.set("p", "T@1");
        valuation.set("q", "F@1");
        valuation.set("r", "0@2");

        let mut audit = Audit::new();
        let direct = sfv_evaluate(&p1, &cpl, &pair, &formula, &valuation)?.to_string();
        audit.check(direct == "F@1", || {
            format!("component-route value {direct}, expected F@1")
        });
        let tabled = fibred.matrix().evaluate(&formula, &valuation)?;
        audit.check(tabled == "F@1", || {
            format!("table-route value {tabled}, expected F@1")
        });
        audit.check(fibred.matrix().is_designated(tabled) == Some(false), || {
            format!("{tabled} should be undesignated in the fibred matrix")
        });
        Ok(audit.finish(
            "example-evaluation",
            "the walked formula evaluates to undesignated F@1 by both routes",
        ))
    })
}

/// Every cell of the fibred implication, conjunction, and both negations in
/// the demonstration fibring, pinned against hand-derived values. The 0@2
/// row of each side-1 connective coincides with its F@1 row because the
/// bridge sends 0@2 to F before the component table is consulted.
pub fn check_fibred_table_cells() -> CheckResult {
    guarded("fibred-table-cells", || {
        let (_, _, _, fibred) = demo_p1_cpl()?;
        let m = fibred.matrix();
        let order = ["T@1", "T1@1", "F@1", "0@2", "1@2"];

        let mut audit = Audit::new();
        audit.check(
            m.values().iter().map(String::as_str).eq(order.iter().copied()),
            || format!("carrier order {:?}, expected {order:?}", m.values()),
        );
        audit.check(m.designated_values() == ["T@1", "T1@1", "1@2"], || {
            format!("designated {:?}, expected [T@1, T1@1, 1@2]", m.designated_values())
        });

        const IMP: [[&str; 5]; 5] = [
            ["T@1", "T@1", "F@1", "F@1", "T@1"],
            ["T@1", "T@1", "F@1", "F@1", "T@1"],
            ["T@1", "T@1", "T@1", "T@1", "T@1"],
            ["T@1", "T@1", "T@1", "T@1", "T@1"],
            ["T@1", "T@1", "F@1", "F@1", "T@1"],
        ];
        const AND: [[&str; 5]; 5] = [
            ["1@2", "1@2", "0@2", "0@2", "1@2"],
            ["1@2", "1@2", "0@2", "0@2", "1@2"],
            ["0@2", "0@2", "0@2", "0@2", "0@2"],
            ["0@2", "0@2", "0@2", "0@2", "0@2"],
            ["1@2", "1@2", "0@2", "0@2", "1@2"],
        ];
        for (connective, expected) in [("impP1@1", &IMP), ("and@2", &AND)] {
            for (r, row) in order.iter().enumerate() {
                for (c, col) in order.iter().enumerate() {
                    let got = m.apply(connective, &[row, col])?;
                    audit.check(got == expected[r][c], || {
                        format!("{connective}({row},{col}) = {got}, expected {}", expected[r][c])
                    });
                }
            }
        }

        const NEG_P1: [&str; 5] = ["F@1", "T@1", "T@1", "T@1", "F@1"];
        const NEG_CPL: [&str; 5] = ["0@2", "0@2", "1@2", "1@2", "0@2"];
        for (connective, expected) in [("negP1@1", &NEG_P1), ("neg@2", &NEG_CPL)] {
            for (i, value) in order.iter().enumerate() {
                let got = m.apply(connective, &[value])?;
                audit.check(got == expected[i], || {
                    format!("{connective}({value}) = {got}, expected {}", expected[i])
                });
            }
        }
        Ok(audit.finish(
            "fibred-table-cells",
            "all 60 fibred table cells match the bridge-through-component construction",
        ))
    })
}

/// The two evaluation routes agree: the recursive component-plus-bridge
/// evaluator against the fibred matrix's own tables. Agreement is pinned on
/// every connective at every value tuple (which extends to all formulas by
/// structural induction), re-checked on every realized behaviour up to a
/// bounded depth, and probed with seeded random deep formulas.
pub fn check_evaluator_agreement() -> CheckResult {
    guarded("evaluator-agreement", || {
        let mut audit = Audit::new();
        let mut rng = ChaCha8Rng::seed_from_u64(0x51f5);

        let (p1, cpl, demo_pair, _) = demo_p1_cpl()?;
        agreement_for(&p1, &cpl, &demo_pair, 4, &mut audit, &mut rng)?;

        let fde = require_builtin("FDE")?;
        let j3 = require_builtin("J3")?;
        agreement_for(&fde, &j3, &pairs::fde_j3(), 2, &mut audit, &mut rng)?;

        Ok(audit.finish(
            "evaluator-agreement",
            "node rule pinned on every value tuple, behaviours swept, 1000 random formulas probed",
        ))
    })
}

fn agreement_for(
    m1: &Matrix,
    m2: &Matrix,
    pair: &FibringPair,
    sweep_depth: usize,
    audit: &mut Audit,
    rng: &mut ChaCha8Rng,
) -> Result<()> {
    let fibred = fibre(m1, m2, pair)?;
    let m = fibred.matrix();
    let carrier = m.value_count();

    // One application of each connective to every tuple of values. Both
    // routes reduce variables to the valuation, so agreement here is the
    // induction step for agreement on arbitrarily deep formulas.
    for position in 0..m.signature().len() {
        let (name, arity) = m.signature().entry(position);
        let arity = arity as usize;
        let args: Vec<Formula> = (1..=arity).map(|i| Formula::var(format!("q{i}"))).collect();
        let formula = Formula::app(name, args);
        let mut digits = vec![0usize; arity];
        loop {
            let mut valuation = Valuation::new();
            for (i, digit) in digits.iter().enumerate() {
                valuation.set(format!("q{}", i + 1), m.value_name(*digit));
            }
            let direct = sfv_evaluate(m1, m2, pair, &formula, &valuation)?.to_string();
            let tabled = m.evaluate(&formula, &valuation)?;
            audit.check(direct == tabled, || {
                format!("{formula} at [{valuation}]: {direct} against {tabled}")
            });
            if arity == 0 || !bump(&mut digits, carrier) {
                break;
            }
        }
    }

    // Every behaviour realized by formulas up to the sweep depth over two
    // variables, at every assignment: the stored vector comes from layered
    // table application, the fresh value from the recursive evaluator.
    let assignments = carrier * carrier;
    for state in enumerate_states(m, 2, sweep_depth) {
        for assignment in 0..assignments {
            let valuation = assignment_valuation(m, assignment, 2);
            let direct = sfv_evaluate(m1, m2, pair, &state.formula, &valuation)?;
            let expected = m.value_name(state.vector[assignment]);
            audit.check(direct.to_string() == expected, || {
                format!(
                    "{} at [{valuation}]: recursive route {direct}, table route {expected}",
                    state.formula
                )
            });
        }
    }

    // Seeded random formulas of depth up to four over two variables.
    for _ in 0..500 {
        let formula = random_formula(rng, m.signature(), &["p1", "p2"], 4);
        let mut valuation = Valuation::new();
        for var in ["p1", "p2"] {
            valuation.set(var, m.value_name(rng.gen_range(0..carrier)));
        }
        let direct = sfv_evaluate(m1, m2, pair, &formula, &valuation)?.to_string();
        let tabled = m.evaluate(&formula, &valuation)?;
        audit.check(direct == tabled, || {
            format!("{formula} at [{valuation}]: {direct} against {tabled}")
        });
    }
    Ok(())
}

/// The closed-form count of admissible pairs between FDE and J3 is 32 and
/// the filtered enumeration realizes exactly that many distinct admissible
/// pairs, including the demonstration pair.
pub fn check_admissible_pair_count() -> CheckResult {
    guarded("admissible-pair-count", || {
        let fde = require_builtin("FDE")?;
        let j3 = require_builtin("J3")?;
        let mut audit = Audit::new();

        // Independent product: each designated value maps anywhere into the
        // other matrix's designated block, each undesignated value anywhere
        // into the undesignated block. FDE splits 2/2, J3 splits 2/1.
        // designated-to-designated: 2^2 each way; gap values: J3's single
        // undesignated 0 for both FDE gaps (1^2), and n or f for 0 (2^1).
        let product: u128 = 2u128.pow(2) * 2u128.pow(2) * 1u128.pow(2) * 2u128.pow(1);
        audit.check(product == 32, || format!("hand product {product}, expected 32"));

        let counted = count_admissible_pairs(&fde, &j3);
        audit.check(counted == product, || {
            format!("closed-form count {counted}, product {product}")
        });

        let enumerated = enumerate_admissible_pairs(&fde, &j3);
        audit.check(enumerated.len() == 32, || {
            format!("enumeration found {} pairs, expected 32", enumerated.len())
        });

        let key = |pair: &FibringPair| -> (Vec<usize>, Vec<usize>) {
            (
                (0..fde.value_count()).map(|i| pair.lambda_index(i)).collect(),
                (0..j3.value_count()).map(|j| pair.mu_index(j)).collect(),
            )
        };
        let mut seen = HashSet::new();
        for pair in &enumerated {
            audit.check(is_admissible(&fde, &j3, pair), || {
                "enumeration produced an inadmissible pair".to_string()
            });
            audit.check(seen.insert(key(pair)), || "enumeration repeated a pair".to_string());
        }
        audit.check(seen.contains(&key(&pairs::fde_j3())), || {
            "the demonstration pair is missing from the enumeration".to_string()
        });
        Ok(audit.finish(
            "admissible-pair-count",
            "32 admissible pairs by closed form and by distinct enumeration",
        ))
    })
}

/// Pure-side excluded middle survives every admissible bridging of FDE with
/// J3: `or@1(neg@1(p), p)` is a tautology in all 32 fibred matrices.
pub fn check_lem_survey_one() -> CheckResult {
    guarded("lem-survey-one", || {
        let survey = lem_fde_j3_survey()?;
        let mut audit = Audit::new();
        audit.check(survey.len() == 32, || {
            format!("survey covered {} pairs, expected 32", survey.len())
        });
        for entry in &survey {
            audit.check(entry.lem_one, || {
                format!("pair with mu(0)={} refutes the pure excluded middle", entry.mu_zero)
            });
        }
        Ok(audit.finish(
            "lem-survey-one",
            "or@1(neg@1(p),p) is a tautology under every admissible bridging",
        ))
    })
}

/// Survey expectation for the mixed excluded middle `vee@2(neg@1(p), p)`:
/// a tautology exactly in the 16 pairs with mu(0)=f. The expectation is
/// refuted — admissibility forces lambda to send both FDE gap values to 0,
/// so v(p)=n@1 bridges both disjuncts to 0 in every one of the 32 fibred
/// matrices; the mu(0)=f split only matters at v(p)=0@2. This check is
/// expected to fail and documents the discrepancy.
pub fn check_lem_survey_two() -> CheckResult {
    guarded("lem-survey-two", || {
        let survey = lem_fde_j3_survey()?;
        let fde = require_builtin("FDE")?;
        let j3 = require_builtin("J3")?;
        let mut audit = Audit::new();
        let with_f = survey.iter().filter(|e| e.mu_zero == "f").count();
        audit.check(with_f == 16, || {
            format!("{with_f} pairs send 0 to f, expected 16")
        });
        for entry in &survey {
            let expected = entry.mu_zero == "f";
            // The free choices that tell the surveyed pairs apart; the other
            // positions are forced by admissibility.
            let choices = || {
                let l = |v: &str| {
                    let i = fde.values().iter().position(|x| x == v).unwrap();
                    j3.value_name(entry.pair.lambda_index(i)).to_string()
                };
                let m = |v: &str| {
                    let j = j3.values().iter().position(|x| x == v).unwrap();
                    fde.value_name(entry.pair.mu_index(j)).to_string()
                };
                format!(
                    "lambda(t)={},lambda(b)={},mu(1)={},mu(half)={},mu(0)={}",
                    l("t"),
                    l("b"),
                    m("1"),
                    m("half"),
                    m("0")
                )
            };
            audit.check(entry.lem_two == expected, || match &entry.lem_two_counterexample {
                Some(valuation) => format!(
                    "{}: vee@2(neg@1(p),p) was expected to hold but is refuted at [{valuation}] \
                     (admissibility forces lambda(n)=lambda(f)=0, so both disjuncts bridge to 0)",
                    choices()
                ),
                None => format!(
                    "{}: vee@2(neg@1(p),p) was expected to fail but holds",
                    choices()
                ),
            });
        }
        Ok(audit.finish(
            "lem-survey-two",
            "the mixed excluded middle holds exactly when mu sends 0 to f",
        ))
    })
}

/// A designation-breaking bridge destroys strong conservativity: fibring
/// disjunction-only classical logic with a three-valued matrix through a
/// pair sending T to 0 makes `p1 entails p1 or p2` fail, first witnessed at
/// p1=T@2, p2=0@1.
pub fn check_strong_extension_counterexample() -> CheckResult {
    guarded("strong-extension-counterexample", || {
        let clor = require_builtin("CLor")?;
        let three = require_builtin("P1")?;
        let pair = FibringPair::from_names(
            &clor,
            &three,
            &[("0", "F"), ("1", "T")],
            &[("T", "0"), ("T1", "1"), ("F", "0")],
        )?;
        let mut audit = Audit::new();
        audit.check(!is_admissible(&clor, &three, &pair), || {
            "the bridge sends designated T to undesignated 0 and must not count as admissible"
                .to_string()
        });
        let fibred = fibre(&clor, &three, &pair)?;

        let premise = parse_formula("p1", clor.signature())?;
        let conclusion = parse_formula("or(p1,p2)", clor.signature())?;
        audit.check(clor.entails(&[premise], &conclusion)?.holds(), || {
            "disjunction introduction should hold in the two-valued component".to_string()
        });

        let fibred_premise = parse_formula("p1", fibred.matrix().signature())?;
        let fibred_conclusion = parse_formula("or@1(p1,p2)", fibred.matrix().signature())?;
        let verdict = fibred
            .matrix()
            .entails(std::slice::from_ref(&fibred_premise), &fibred_conclusion)?;
        audit.check(!verdict.holds(), || {
            "disjunction introduction should fail in the fibred matrix".to_string()
        });
        if let Some(witness) = verdict.counterexample() {
            audit.check(
                witness.get("p1") == Some("T@2") && witness.get("p2") == Some("0@1"),
                || format!("first refuting valuation [{witness}], expected p1=T@2, p2=0@1"),
            );
            let premise_value = fibred.matrix().evaluate(&fibred_premise, witness)?;
            let conclusion_value = fibred.matrix().evaluate(&fibred_conclusion, witness)?;
            audit.check(
                fibred.matrix().is_designated(premise_value) == Some(true)
                    && conclusion_value == "0@1",
                || {
                    format!(
                        "witness re-evaluation: premise {premise_value}, conclusion {conclusion_value}"
                    )
                },
            );
        } else {
            audit.check(false, || "refutation carried no witness".to_string());
        }

        let report = check_strong_conservative(&clor, &fibred, Side::One, 2, 2, 2);
        audit.check(!report.conservative, || {
            "the bounded search should also notice the lost sequent".to_string()
        });
        Ok(audit.finish(
            "strong-extension-counterexample",
            "the T-to-0 bridge loses disjunction introduction exactly as pinned",
        ))
    })
}

/// Bounded conservativity sweep: every admissible bridging of I^1 with P^1
/// and two seeded admissible bridgings of FDE with J3 are strongly
/// conservative over both components (depth 2, up to 2 premises, 3
/// variables); the demonstration bridging of P1 with classical logic is
/// weakly conservative to depth 3 over two variables.
pub fn check_conservativity_suite() -> CheckResult {
    guarded("conservativity-suite", || {
        let mut audit = Audit::new();

        let i1 = require_builtin("I^1")?;
        let pk1 = require_builtin("P^1")?;
        let all = enumerate_admissible_pairs(&i1, &pk1);
        audit.check(all.len() == 4, || {
            format!("I^1/P^1 admit {} pairs, expected 4", all.len())
        });
        for pair in &all {
            let fibred = fibre(&i1, &pk1, pair)?;
            let one = check_strong_conservative(&i1, &fibred, Side::One, 2, 2, 3);
            audit.check(one.conservative, || format!("I^1 side: {one}"));
            let two = check_strong_conservative(&pk1, &fibred, Side::Two, 2, 2, 3);
            audit.check(two.conservative, || format!("P^1 side: {two}"));
        }

        let fde = require_builtin("FDE")?;
        let j3 = require_builtin("J3")?;
        let thirty_two = enumerate_admissible_pairs(&fde, &j3);
        let mut rng = ChaCha8Rng::seed_from_u64(0xc05e);
        let first = rng.gen_range(0..thirty_two.len());
        let mut second = rng.gen_range(0..thirty_two.len());
        while second == first {
            second = rng.gen_range(0..thirty_two.len());
        }
        for index in [first, second] {
            let pair = &thirty_two[index];
            let fibred = fibre(&fde, &j3, pair)?;
            let one = check_strong_conservative(&fde, &fibred, Side::One, 2, 2, 3);
            audit.check(one.conservative, || format!("FDE side of pair {index}: {one}"));
            let two = check_strong_conservative(&j3, &fibred, Side::Two, 2, 2, 3);
            audit.check(two.conservative, || format!("J3 side of pair {index}: {two}"));
        }

        let (p1, cpl, _, demo) = demo_p1_cpl()?;
        let weak_one = check_weak_conservative(&p1, &demo, Side::One, 3, 2);
        audit.check(weak_one.conservative, || format!("P1 side: {weak_one}"));
        let weak_two = check_weak_conservative(&cpl, &demo, Side::Two, 3, 2);
        audit.check(weak_two.conservative, || format!("classical side: {weak_two}"));

        Ok(audit.finish(
            "conservativity-suite",
            "all bounded strong and weak conservativity sweeps closed without counterexamples",
        ))
    })
}

/// Over the mutually inverse bridging of the two-valued I^0 and P^0, the
/// implication and negation fragments are isomorphic, the sufficient
/// condition reports it, and bounded identification confirms both pairs.
pub fn check_identification_two_valued() -> CheckResult {
    guarded("identification-two-valued", || {
        let i0 = require_builtin("I^0")?;
        let p0 = require_builtin("P^0")?;
        let pair = pairs::i_p(&i0, &p0, 0, 0)?;
        let mut audit = Audit::new();
        audit.check(is_admissible(&i0, &p0, &pair), || {
            "the inverse pair should be admissible".to_string()
        });
        let fibred = fibre(&i0, &p0, &pair)?;
        for connective in ["imp", "neg"] {
            let sufficient = theorem_sufficient(&i0, &p0, &pair, connective, connective)?;
            audit.check(sufficient, || {
                format!("sufficient condition rejected ({connective},{connective})")
            });
            let report = identifies(
                &fibred,
                &tag_name(connective, Side::One),
                &tag_name(connective, Side::Two),
                3,
                2,
                IdentificationMode::Close,
            )?;
            audit.check(report.identified, || {
                format!("bounded identification rejected {connective}: {report}")
            });
        }
        Ok(audit.finish(
            "identification-two-valued",
            "both shared connectives are identified and the sufficient condition agrees",
        ))
    })
}

/// All four admissible value-bijection variants between the three-valued
/// conjunction fragments identify the two conjunctions up to depth 3.
pub fn check_identification_conjunctive() -> CheckResult {
    guarded("identification-conjunctive", || {
        let l3 = require_builtin("L3conj")?;
        let g3 = require_builtin("G3conj")?;
        let mut audit = Audit::new();
        for lambda_variant in [1u8, 2] {
            for mu_variant in [1u8, 2] {
                let pair = pairs::l3_g3(lambda_variant, mu_variant)?;
                let fibred = fibre(&l3, &g3, &pair)?;
                let report =
                    identifies(&fibred, "conj@1", "conj@2", 3, 2, IdentificationMode::Close)?;
                audit.check(report.identified, || {
                    format!(
                        "variant ({lambda_variant},{mu_variant}) separated the conjunctions: {report}"
                    )
                });
            }
        }
        Ok(audit.finish(
            "identification-conjunctive",
            "every variant identifies the two conjunctions up to depth 3",
        ))
    })
}

/// Survey expectation: the sufficient condition (mutually inverse bridge
/// restricting to a fragment isomorphism) holds for the identity variant
/// between the three-valued conjunctions and fails for the other three.
/// The identity half is refuted — the identity map is not a table
/// homomorphism (the first conjunction meets (half,half) at 0, the second
/// at half), and no bijection can be one because the output multisets
/// differ (six zeros against five). This check is expected to fail and
/// documents the discrepancy.
pub fn check_identification_theorem_condition() -> CheckResult {
    guarded("identification-theorem-condition", || {
        let l3 = require_builtin("L3conj")?;
        let g3 = require_builtin("G3conj")?;
        let mut audit = Audit::new();
        for (lambda_variant, mu_variant, expected) in
            [(1u8, 1u8, true), (1, 2, false), (2, 1, false), (2, 2, false)]
        {
            let pair = pairs::l3_g3(lambda_variant, mu_variant)?;
            let got = theorem_sufficient(&l3, &g3, &pair, "conj", "conj")?;
            audit.check(got == expected, || {
                format!(
                    "variant ({lambda_variant},{mu_variant}): sufficient condition returned {got}, \
                     survey expected {expected}; the identity map fails the table equation at \
                     (half,half) (0 against half) and the output multisets (six zeros against five) \
                     rule out every other bijection"
                )
            });
        }
        Ok(audit.finish(
            "identification-theorem-condition",
            "the sufficient condition singles out the identity-bridged variant",
        ))
    })
}

/// Adding the implications separates the two conjunctions: bounded
/// identification fails at depth 3, the search's witness re-evaluates
/// exactly as reported, and the pinned implication-context pair takes an
/// undesignated value on the first side and a designated one on the second.
pub fn check_identification_implicative_counterexample() -> CheckResult {
    guarded("identification-implicative-counterexample", || {
        let l3 = require_builtin("L3conjimp")?;
        let g3 = require_builtin("G3conjimp")?;
        let pair = pairs::l3_g3(2, 2)?;
        let fibred = fibre(&l3, &g3, &pair)?;
        let m = fibred.matrix();
        let mut audit = Audit::new();

        let report = identifies(&fibred, "conj@1", "conj@2", 3, 3, IdentificationMode::Close)?;
        audit.check(!report.identified, || {
            "the implication context should separate the conjunctions".to_string()
        });
        if let Some(counterexample) = &report.counterexample {
            let first = m.evaluate(&counterexample.first, &counterexample.valuation)?;
            let second = m.evaluate(&counterexample.second, &counterexample.valuation)?;
            audit.check(
                first == counterexample.first_value && second == counterexample.second_value,
                || format!("reported witness re-evaluates to {first} and {second}"),
            );
            audit.check(m.is_designated(first) != m.is_designated(second), || {
                format!("witness values {first} and {second} agree on designation")
            });
            audit.check(
                closely_associated(
                    m.signature(),
                    &counterexample.first,
                    &counterexample.second,
                    "conj@1",
                    "conj@2",
                )?,
                || "the reported witness formulas are not one swap apart".to_string(),
            );
        } else {
            audit.check(false, || "no counterexample accompanied the refusal".to_string());
        }

        let psi1 = parse_formula("imp@1(p,conj@1(q,r))", m.signature())?;
        let psi2 = parse_formula("imp@1(p,conj@2(q,r))", m.signature())?;
        let mut witness = Valuation::new();
        witness.set("p", "half@1");
        witness.set("q", "0@2");
        witness.set("r", "0@1");
        let first = m.evaluate(&psi1, &witness)?;
        let second = m.evaluate(&psi2, &witness)?;
        audit.check(first == "half@1", || {
            format!("{psi1} evaluates to {first}, expected half@1")
        });
        audit.check(second == "1@1", || {
            format!("{psi2} evaluates to {second}, expected 1@1")
        });
        audit.check(
            m.is_designated(first) == Some(false) && m.is_designated(second) == Some(true),
            || "the pinned pair should split designation".to_string(),
        );
        Ok(audit.finish(
            "identification-implicative-counterexample",
            "identification fails with a verified witness and the pinned context pair splits designation",
        ))
    })
}

/// The swapping bijection between the three-valued conjunction fragments
/// fails the homomorphism equation first at (0,half): it maps the first
/// conjunction's 0 to half while the second conjunction of the mapped
/// arguments is 0.
pub fn check_hom_equation_pin() -> CheckResult {
    guarded("hom-equation-pin", || {
        let l3 = require_builtin("L3conj")?;
        let g3 = require_builtin("G3conj")?;
        let pair = pairs::l3_g3(2, 2)?;
        let h: Vec<usize> = (0..l3.value_count()).map(|i| pair.lambda_index(i)).collect();
        let mut audit = Audit::new();
        match hom_violation(&h, &l3, &g3)? {
            Some(violation) => {
                audit.check(violation.connective == "conj", || {
                    format!("violation at connective {}", violation.connective)
                });
                audit.check(violation.args == ["0", "half"], || {
                    format!("first violation at {:?}, expected [0, half]", violation.args)
                });
                audit.check(
                    violation.mapped_result == "half" && violation.result_of_mapped == "0",
                    || format!("{violation}"),
                );
            }
            None => audit.check(false, || "no violation found".to_string()),
        }
        audit.check(!is_strict_hom(&h, &l3, &g3)?, || {
            "the swap must not count as a strict homomorphism".to_string()
        });
        Ok(audit.finish(
            "hom-equation-pin",
            "the swap map fails the table equation first at (0,half), half against 0",
        ))
    })
}

/// Presentation invariance: the conjunction and disjunction presentations
/// of classical logic have the same clone, their fibrings with P1 under the
/// same bridge interdefine each other's tables, translated formulas keep
/// their term functions and entailments, and a single bridged projection on
/// a two-element matrix changes the fibred presentation.
pub fn check_presentation_invariance() -> CheckResult {
    guarded("presentation-invariance", || {
        let cpland = require_builtin("CPLand")?;
        let cplor = require_builtin("CPLor")?;
        let mut audit = Audit::new();

        let report = same_presentation(&cpland, &cplor, 2)?;
        audit.check(report.same, || format!("{report}"));
        audit.check(clone_upto(&cpland, 2).len() == 16, || {
            "the conjunction presentation should define all 16 binary functions".to_string()
        });
        audit.check(clone_upto(&cplor, 2).len() == 16, || {
            "the disjunction presentation should define all 16 binary functions".to_string()
        });

        let p1 = require_builtin("P1")?;
        let lambda = [("0", "F"), ("1", "T")];
        let mu = [("T", "1"), ("T1", "1"), ("F", "0")];
        let f1 = fibre(&cpland, &p1, &FibringPair::from_names(&cpland, &p1, &lambda, &mu)?)?;
        let f2 = fibre(&cplor, &p1, &FibringPair::from_names(&cplor, &p1, &lambda, &mu)?)?;
        let m1 = f1.matrix();
        let m2 = f2.matrix();

        audit.check(
            m1.values() == m2.values()
                && m1.designated_values() == m2.designated_values(),
            || "the two fibrings should share carrier and designation".to_string(),
        );
        let carrier: Vec<&str> = m1.values().iter().map(String::as_str).collect();
        for connective in ["neg@1", "negP1@2", "impP1@2"] {
            let arity = m1.signature().arity(connective).unwrap_or(0) as usize;
            let mut digits = vec![0usize; arity];
            loop {
                let args: Vec<&str> = digits.iter().map(|d| carrier[*d]).collect();
                let a = m1.apply(connective, &args)?;
                let b = m2.apply(connective, &args)?;
                audit.check(a == b, || {
                    format!("shared {connective}{args:?}: {a} against {b}")
                });
                if !bump(&mut digits, carrier.len()) {
                    break;
                }
            }
        }

        // Interdefinability cell by cell: conjunction through De Morgan in
        // the disjunction fibring and vice versa.
        let and_via_or = parse_formula("neg@1(or@1(neg@1(p1),neg@1(p2)))", m2.signature())?;
        let or_via_and = parse_formula("neg@1(and@1(neg@1(p1),neg@1(p2)))", m1.signature())?;
        for x in &carrier {
            for y in &carrier {
                let mut valuation = Valuation::new();
                valuation.set("p1", *x);
                valuation.set("p2", *y);
                let direct_and = m1.apply("and@1", &[x, y])?;
                let defined_and = m2.evaluate(&and_via_or, &valuation)?;
                audit.check(direct_and == defined_and, || {
                    format!("and@1({x},{y}) = {direct_and}, De Morgan gives {defined_and}")
                });
                let direct_or = m2.apply("or@1", &[x, y])?;
                let defined_or = m1.evaluate(&or_via_and, &valuation)?;
                audit.check(direct_or == defined_or, || {
                    format!("or@1({x},{y}) = {direct_or}, De Morgan gives {defined_or}")
                });
            }
        }

        // Translation keeps term functions on every behaviour realized up
        // to depth 3 over two variables.
        let mut templates = HashMap::new();
        templates.insert("and@1".to_string(), and_via_or.clone());
        for state in enumerate_states(m1, 2, 3) {
            let original = term_function(m1, &state.formula, 2)?;
            let translated = term_function(m2, &translate(&state.formula, &templates), 2)?;
            audit.check(original.table == translated.table, || {
                format!("translation changed the term function of {}", state.formula)
            });
        }

        // Entailment carries over, counterexamples included.
        let sequents = [
            (vec!["p"], "and@1(p,q)"),
            (vec!["and@1(p,q)"], "p"),
            (vec![], "impP1@2(p,p)"),
        ];
        for (premises, conclusion) in sequents {
            let parsed_premises: Vec<Formula> = premises
                .iter()
                .map(|text| parse_formula(text, m1.signature()))
                .collect::<Result<_>>()?;
            let parsed_conclusion = parse_formula(conclusion, m1.signature())?;
            let translated_premises: Vec<Formula> = parsed_premises
                .iter()
                .map(|f| translate(f, &templates))
                .collect();
            let translated_conclusion = translate(&parsed_conclusion, &templates);
            let original = m1.entails(&parsed_premises, &parsed_conclusion)?;
            let translated = m2.entails(&translated_premises, &translated_conclusion)?;
            audit.check(original.holds() == translated.holds(), || {
                format!("sequent {premises:?} |- {conclusion}: verdicts diverge")
            });
            let witness_a = original.counterexample().map(|v| v.to_string());
            let witness_b = translated.counterexample().map(|v| v.to_string());
            audit.check(witness_a == witness_b, || {
                format!(
                    "sequent {premises:?} |- {conclusion}: witnesses {witness_a:?} against {witness_b:?}"
                )
            });
        }

        // A bridged projection on a two-element matrix changes the fibred
        // presentation even though both components present the same clone.
        let plain = Matrix::new(
            "plain",
            vec!["0".into(), "1".into()],
            vec!["1".into()],
            Signature::new(Vec::<(&str, u8)>::new())?,
            vec![],
        )?;
        let lifted = Matrix::new(
            "lifted",
            vec!["0".into(), "1".into()],
            vec!["1".into()],
            Signature::new([("proj", 1u8)])?,
            vec![vec!["0".into(), "1".into()]],
        )?;
        let partner = Matrix::new(
            "partner",
            vec!["a".into(), "b".into()],
            vec!["a".into()],
            Signature::new(Vec::<(&str, u8)>::new())?,
            vec![],
        )?;
        let names = (&[("0", "b"), ("1", "a")], &[("a", "1"), ("b", "0")]);
        let plain_pair = FibringPair::from_names(&plain, &partner, names.0, names.1)?;
        let lifted_pair = FibringPair::from_names(&lifted, &partner, names.0, names.1)?;
        let plain_fibred = fibre(&plain, &partner, &plain_pair)?;
        let lifted_fibred = fibre(&lifted, &partner, &lifted_pair)?;
        let projection = same_presentation(plain_fibred.matrix(), lifted_fibred.matrix(), 1)?;
        audit.check(!projection.same && projection.differing_arity == Some(1), || {
            format!("{projection}")
        });
        audit.check(projection.only_first.is_none(), || {
            "the bare fibring should not define anything extra".to_string()
        });
        match &projection.only_second {
            Some((formula, outputs)) => audit.check(
                formula.to_string() == "proj@1(p1)" && outputs == &["0@1", "1@1", "1@1", "0@1"],
                || format!("extra function {formula} with outputs {outputs:?}"),
            ),
            None => audit.check(false, || "no witness for the extra function".to_string()),
        }

        Ok(audit.finish(
            "presentation-invariance",
            "equivalent presentations fibre interchangeably; a bridged projection does not",
        ))
    })
}

/// Seeded and exhaustive law sweep: entailment is reflexive, monotone,
/// transitive, and structural; the bridge maps are idempotent, typed, and
/// designation-compatible on admissible pairs; fibred tables stay on their
/// side; pure formulas restrict to their component; association behaves as
/// an equivalence; the sufficient condition implies bounded identification;
/// surviving swap pairs are bridge-equal; printing and parsing are inverse.
pub fn check_property_suite() -> CheckResult {
    guarded("property-suite", || {
        let mut audit = Audit::new();
        let mut rng = ChaCha8Rng::seed_from_u64(0x6D61_7466);

        let cpl = require_builtin("CPL")?;
        let p1 = require_builtin("P1")?;
        let fde = require_builtin("FDE")?;
        let j3 = require_builtin("J3")?;
        let fj_pair = pairs::fde_j3();
        let fj = fibre(&fde, &j3, &fj_pair)?;
        let (demo_p1, demo_cpl, demo_pair, demo) = demo_p1_cpl()?;

        {
            let systems: [&Matrix; 3] = [&cpl, &p1, fj.matrix()];
            tarskian_laws(&mut audit, &mut rng, &systems)?;
            structurality(&mut audit, &mut rng, &systems)?;
            roundtrip(&mut audit, &mut rng, &systems)?;
        }
        bridge_identities(
            &mut audit,
            &[(&fde, &j3, &fj_pair, &fj), (&demo_p1, &demo_cpl, &demo_pair, &demo)],
        )?;
        output_origin(&mut audit, &[&fj, &demo])?;
        component_restriction(&mut audit, &mut rng, &fde, &j3, &fj_pair, &fj)?;
        association_laws(&mut audit, &mut rng, fj.matrix())?;
        sufficiency_implies_identification(&mut audit)?;
        surviving_pairs_bridge_equal(&mut audit)?;

        Ok(audit.finish(
            "property-suite",
            "entailment, bridging, association, and syntax laws hold across seeded sweeps",
        ))
    })
}

/// Reflexivity, monotonicity, and cut on randomly drawn premise sets.
fn tarskian_laws(audit: &mut Audit, rng: &mut ChaCha8Rng, systems: &[&Matrix]) -> Result<()> {
    let vars = ["p1", "p2", "p3"];
    for _ in 0..250 {
        let m = systems[rng.gen_range(0..systems.len())];
        let size = rng.gen_range(1..=3);
        let gamma: Vec<Formula> =
            (0..size).map(|_| random_formula(rng, m.signature(), &vars, 3)).collect();

        let member = gamma[rng.gen_range(0..gamma.len())].clone();
        audit.check(m.entails(&gamma, &member)?.holds(), || {
            format!("{}: premises fail to entail their member {member}", m.name())
        });

        let phi = random_formula(rng, m.signature(), &vars, 3);
        let cut_point = rng.gen_range(0..=gamma.len());
        let small_holds = m.entails(&gamma[..cut_point], &phi)?.holds();
        let large_holds = m.entails(&gamma, &phi)?.holds();
        audit.check(!small_holds || large_holds, || {
            format!("{}: enlarging the premises lost {phi}", m.name())
        });

        let psi = random_formula(rng, m.signature(), &vars, 3);
        if m.entails(&gamma, &psi)?.holds() {
            let mut extended = gamma.clone();
            extended.push(psi.clone());
            if m.entails(&extended, &phi)?.holds() {
                audit.check(m.entails(&gamma, &phi)?.holds(), || {
                    format!("{}: cut fails through {psi} for {phi}", m.name())
                });
            }
        }
    }
    Ok(())
}

/// Entailment is closed under substitution of formulas for variables.
fn structurality(audit: &mut Audit, rng: &mut ChaCha8Rng, systems: &[&Matrix]) -> Result<()> {
    let vars = ["p1", "p2", "p3"];
    for round in 0..250 {
        let m = systems[rng.gen_range(0..systems.len())];
        let size = rng.gen_range(1..=2);
        let gamma: Vec<Formula> =
            (0..size).map(|_| random_formula(rng, m.signature(), &vars, 3)).collect();
        // Half the rounds use a member as the conclusion so a holding
        // sequent is guaranteed; the rest rely on chance hits.
        let phi = if round % 2 == 0 {
            gamma[rng.gen_range(0..gamma.len())].clone()
        } else {
            random_formula(rng, m.signature(), &vars, 3)
        };
        if !m.entails(&gamma, &phi)?.holds() {
            continue;
        }
        let mut sigma = HashMap::new();
        for var in vars {
            sigma.insert(var.to_string(), random_formula(rng, m.signature(), &vars, 2));
        }
        let substituted: Vec<Formula> =
            gamma.iter().map(|f| apply_substitution(f, &sigma)).collect();
        let conclusion = apply_substitution(&phi, &sigma);
        audit.check(m.entails(&substituted, &conclusion)?.holds(), || {
            format!("{}: substitution broke {phi}", m.name())
        });
    }
    Ok(())
}

/// The bridge maps land on their side, fix it pointwise, are idempotent,
/// and (on admissible pairs) agree with designation on all three carriers.
fn bridge_identities(
    audit: &mut Audit,
    configurations: &[(&Matrix, &Matrix, &FibringPair, &FibredMatrix)],
) -> Result<()> {
    for (m1, m2, pair, fibred) in configurations {
        let admissible = is_admissible(m1, m2, pair);
        for index in 0..fibred.matrix().value_count() {
            let value = fibred.tagged_value(index);
            let lowered = star_mu(m1, m2, pair, &value)?;
            let raised = star_lambda(m1, m2, pair, &value)?;
            audit.check(lowered.side == Side::One, || {
                format!("mu bridge left {value} on side two")
            });
            audit.check(raised.side == Side::Two, || {
                format!("lambda bridge left {value} on side one")
            });
            if value.side == Side::One {
                audit.check(lowered.to_string() == value.to_string(), || {
                    format!("mu bridge moved the side-one value {value}")
                });
            } else {
                audit.check(raised.to_string() == value.to_string(), || {
                    format!("lambda bridge moved the side-two value {value}")
                });
            }
            let lowered_again = star_mu(m1, m2, pair, &lowered)?;
            let raised_again = star_lambda(m1, m2, pair, &raised)?;
            audit.check(
                lowered_again.to_string() == lowered.to_string()
                    && raised_again.to_string() == raised.to_string(),
                || format!("bridging {value} twice drifted"),
            );
            if admissible {
                let in_fibred = fibred.matrix().is_designated_index(index);
                let below = m1.is_designated(&lowered.name) == Some(true);
                let above = m2.is_designated(&raised.name) == Some(true);
                audit.check(in_fibred == below && below == above, || {
                    format!(
                        "designation of {value} disagrees across the bridges ({in_fibred}/{below}/{above})"
                    )
                });
            }
        }
    }
    Ok(())
}

/// Every cell of every fibred table carries the tag of its connective.
fn output_origin(audit: &mut Audit, fibrings: &[&FibredMatrix]) -> Result<()> {
    for fibred in fibrings {
        let m = fibred.matrix();
        let carrier = m.value_count();
        for position in 0..m.signature().len() {
            let (name, arity) = m.signature().entry(position);
            let side = match split_tag(name) {
                Some((_, side)) => side,
                None => {
                    audit.check(false, || format!("connective {name} is untagged"));
                    continue;
                }
            };
            let mut digits = vec![0usize; arity as usize];
            loop {
                let args: Vec<&str> = digits.iter().map(|d| m.value_name(*d)).collect();
                let out = m.apply(name, &args)?;
                audit.check(split_tag(out).map(|(_, s)| s) == Some(side), || {
                    format!("{name}{args:?} produced {out} from the wrong side")
                });
                if arity == 0 || !bump(&mut digits, carrier) {
                    break;
                }
            }
        }
    }
    Ok(())
}

/// Formulas built from one side's connectives evaluate through that
/// component alone: the fibred value is the component value of the bridged
/// valuation, and on side-one inputs the embedding preserves designation.
fn component_restriction(
    audit: &mut Audit,
    rng: &mut ChaCha8Rng,
    m1: &Matrix,
    m2: &Matrix,
    pair: &FibringPair,
    fibred: &FibredMatrix,
) -> Result<()> {
    let m = fibred.matrix();
    let vars = ["p1", "p2"];
    for _ in 0..150 {
        let raw = random_application(rng, m1.signature(), &vars, 3);
        let tagged = tag_formula(&raw, Side::One);
        let mut w = Valuation::new();
        let mut bridged = Valuation::new();
        for var in vars {
            let value = fibred.tagged_value(rng.gen_range(0..m.value_count()));
            w.set(var, value.to_string());
            bridged.set(var, star_mu(m1, m2, pair, &value)?.name);
        }
        let in_fibred = m.evaluate(&tagged, &w)?;
        let in_component = m1.evaluate(&raw, &bridged)?;
        audit.check(in_fibred == tag_name(in_component, Side::One), || {
            format!("side-one formula {tagged} strayed: {in_fibred} against {in_component}")
        });
    }
    for _ in 0..100 {
        let raw = random_application(rng, m2.signature(), &vars, 3);
        let tagged = tag_formula(&raw, Side::Two);
        let mut w = Valuation::new();
        let mut bridged = Valuation::new();
        for var in vars {
            let value = fibred.tagged_value(rng.gen_range(0..m.value_count()));
            w.set(var, value.to_string());
            bridged.set(var, star_lambda(m1, m2, pair, &value)?.name);
        }
        let in_fibred = m.evaluate(&tagged, &w)?;
        let in_component = m2.evaluate(&raw, &bridged)?;
        audit.check(in_fibred == tag_name(in_component, Side::Two), || {
            format!("side-two formula {tagged} strayed: {in_fibred} against {in_component}")
        });
    }
    // Embedding: side-one values in, side-one behaviour out, designation kept.
    for _ in 0..100 {
        let raw = random_formula(rng, m1.signature(), &vars, 3);
        let tagged = tag_formula(&raw, Side::One);
        let mut component_valuation = Valuation::new();
        let mut w = Valuation::new();
        for var in vars {
            let value = m1.value_name(rng.gen_range(0..m1.value_count()));
            component_valuation.set(var, value);
            w.set(var, tag_name(value, Side::One));
        }
        let in_component = m1.evaluate(&raw, &component_valuation)?;
        let in_fibred = m.evaluate(&tagged, &w)?;
        audit.check(in_fibred == tag_name(in_component, Side::One), || {
            format!("embedding moved {raw}: {in_component} against {in_fibred}")
        });
        audit.check(
            m.is_designated(in_fibred) == m1.is_designated(in_component),
            || format!("embedding changed designation of {raw}"),
        );
    }
    Ok(())
}

/// Association is reflexive with a one-step chain, symmetric, closed under
/// relabelling the swap pair throughout a formula, and every returned chain
/// moves by single swaps.
fn association_laws(audit: &mut Audit, rng: &mut ChaCha8Rng, m: &Matrix) -> Result<()> {
    let sig = m.signature();
    let vars = ["p1", "p2"];
    for _ in 0..150 {
        let formula = random_formula(rng, sig, &vars, 3);
        let reflexive = associated(sig, &formula, &formula, "and@1", "vee@2")?;
        audit.check(
            matches!(&reflexive, Some(witness) if witness.chain.len() == 1),
            || format!("self-association of {formula} returned a long chain"),
        );

        let relabeled = relabel(&formula, "and@1", "vee@2");
        let forward = associated(sig, &formula, &relabeled, "and@1", "vee@2")?;
        match &forward {
            Some(witness) => {
                audit.check(
                    witness.chain.first() == Some(&formula)
                        && witness.chain.last() == Some(&relabeled),
                    || format!("chain endpoints wrong for {formula}"),
                );
                for window in witness.chain.windows(2) {
                    audit.check(
                        closely_associated(sig, &window[0], &window[1], "and@1", "vee@2")?,
                        || format!("chain step {} to {} is not one swap", window[0], window[1]),
                    );
                }
            }
            None => audit.check(false, || {
                format!("full relabelling of {formula} should stay associated")
            }),
        }
        audit.check(
            associated(sig, &relabeled, &formula, "and@1", "vee@2")?.is_some(),
            || format!("association is not symmetric on {formula}"),
        );
    }
    Ok(())
}

/// Wherever the sufficient condition holds, bounded identification agrees.
fn sufficiency_implies_identification(audit: &mut Audit) -> Result<()> {
    let cpl = require_builtin("CPLand")?;
    let identity = FibringPair::identity(&cpl);
    audit.check(is_admissible(&cpl, &cpl, &identity), || {
        "the identity pair should be admissible".to_string()
    });
    let self_fibred = fibre(&cpl, &cpl, &identity)?;
    for connective in ["neg", "and"] {
        let sufficient = theorem_sufficient(&cpl, &cpl, &identity, connective, connective)?;
        audit.check(sufficient, || {
            format!("identity self-bridging rejected ({connective},{connective})")
        });
        let report = identifies(
            &self_fibred,
            &tag_name(connective, Side::One),
            &tag_name(connective, Side::Two),
            2,
            2,
            IdentificationMode::Close,
        )?;
        audit.check(sufficient && report.identified, || {
            format!("sufficient condition held for {connective} but identification failed")
        });
    }
    let i0 = require_builtin("I^0")?;
    let p0 = require_builtin("P^0")?;
    let pair = pairs::i_p(&i0, &p0, 0, 0)?;
    let fibred = fibre(&i0, &p0, &pair)?;
    for connective in ["imp", "neg"] {
        let sufficient = theorem_sufficient(&i0, &p0, &pair, connective, connective)?;
        let report = identifies(
            &fibred,
            &tag_name(connective, Side::One),
            &tag_name(connective, Side::Two),
            2,
            2,
            IdentificationMode::Close,
        )?;
        audit.check(!sufficient || report.identified, || {
            format!("sufficient condition held for {connective} but identification failed")
        });
    }
    Ok(())
}

/// On systems where identification succeeds, every surviving swap pair is
/// bridge-equal pointwise: both bridge maps send the two value vectors to
/// the same place at every assignment.
fn surviving_pairs_bridge_equal(audit: &mut Audit) -> Result<()> {
    let i0 = require_builtin("I^0")?;
    let p0 = require_builtin("P^0")?;
    let pair = pairs::i_p(&i0, &p0, 0, 0)?;
    let fibred = fibre(&i0, &p0, &pair)?;
    let (states, failing) = close_pair_states(fibred.matrix(), "imp@1", "imp@2", 3, 2)?;
    audit.check(failing.is_none(), || {
        "the two-valued swap search should close without failures".to_string()
    });
    for state in &states {
        for position in 0..state.v1.len() {
            let a = fibred.tagged_value(state.v1[position]);
            let b = fibred.tagged_value(state.v2[position]);
            let raised_equal = star_lambda(&i0, &p0, &pair, &a)?.to_string()
                == star_lambda(&i0, &p0, &pair, &b)?.to_string();
            let lowered_equal = star_mu(&i0, &p0, &pair, &a)?.to_string()
                == star_mu(&i0, &p0, &pair, &b)?.to_string();
            audit.check(raised_equal && lowered_equal, || {
                format!(
                    "pair {} / {} diverges under the bridges at {a} against {b}",
                    state.first, state.second
                )
            });
        }
    }
    Ok(())
}

/// Printing then parsing returns the same formula tree.
fn roundtrip(audit: &mut Audit, rng: &mut ChaCha8Rng, systems: &[&Matrix]) -> Result<()> {
    let vars = ["p1", "p2", "p3"];
    for _ in 0..300 {
        let m = systems[rng.gen_range(0..systems.len())];
        let formula = random_formula(rng, m.signature(), &vars, 4);
        let reparsed = parse_formula(&formula.to_string(), m.signature())?;
        audit.check(reparsed == formula, || {
            format!("{formula} reparsed as {reparsed}")
        });
    }
    Ok(())
}

/// A random formula over the given signature and variables, at most `depth`
/// connective layers deep.
fn random_formula(
    rng: &mut ChaCha8Rng,
    signature: &Signature,
    vars: &[&str],
    depth: usize,
) -> Formula {
    if depth == 0 || signature.is_empty() || rng.gen_range(0..4) == 0 {
        return Formula::var(vars[rng.gen_range(0..vars.len())]);
    }
    let (name, arity) = signature.entry(rng.gen_range(0..signature.len()));
    let args: Vec<Formula> =
        (0..arity).map(|_| random_formula(rng, signature, vars, depth - 1)).collect();
    Formula::app(name, args)
}

/// Like `random_formula`, but the root is always a connective application,
/// so the value comes out of a table instead of passing straight through
/// the valuation. Requires a non-empty signature.
fn random_application(
    rng: &mut ChaCha8Rng,
    signature: &Signature,
    vars: &[&str],
    depth: usize,
) -> Formula {
    let (name, arity) = signature.entry(rng.gen_range(0..signature.len()));
    let args: Vec<Formula> = (0..arity)
        .map(|_| random_formula(rng, signature, vars, depth.saturating_sub(1)))
        .collect();
    Formula::app(name, args)
}

/// Replaces every variable by its image under the map, leaving unmapped
/// variables alone.
fn apply_substitution(formula: &Formula, sigma: &HashMap<String, Formula>) -> Formula {
    match formula {
        Formula::Var(name) => sigma
            .get(name)
            .cloned()
            .unwrap_or_else(|| Formula::Var(name.clone())),
        Formula::App(name, args) => Formula::App(
            name.clone(),
            args.iter().map(|arg| apply_substitution(arg, sigma)).collect(),
        ),
    }
}

/// Renames every application of `from` to `to` throughout a formula.
fn relabel(formula: &Formula, from: &str, to: &str) -> Formula {
    match formula {
        Formula::Var(name) => Formula::Var(name.clone()),
        Formula::App(name, args) => Formula::app(
            if name == from { to } else { name.as_str() },
            args.iter().map(|arg| relabel(arg, from, to)).collect::<Vec<_>>(),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn the_walked_example_check_passes() {
        let result = check_example_evaluation();
        assert!(result.passed, "{result}");
    }

    #[test]
    fn the_table_pin_check_passes() {
        let result = check_fibred_table_cells();
        assert!(result.passed, "{result}");
    }

    #[test]
    fn the_pair_count_check_passes() {
        let result = check_admissible_pair_count();
        assert!(result.passed, "{result}");
    }

    #[test]
    fn the_hom_pin_check_passes() {
        let result = check_hom_equation_pin();
        assert!(result.passed, "{result}");
    }

    #[test]
    fn the_mixed_excluded_middle_survey_fails_as_documented() {
        let result = check_lem_survey_two();
        assert!(!result.passed);
        assert!(result.details.contains("16 of 33 cases failed"), "{result}");
        assert!(result.details.contains("lambda(n)=lambda(f)=0"), "{result}");
    }

    #[test]
    fn the_sufficient_condition_survey_fails_as_documented() {
        let result = check_identification_theorem_condition();
        assert!(!result.passed);
        assert!(result.details.contains("1 of 4 cases failed"), "{result}");
        assert!(result.details.contains("(half,half)"), "{result}");
    }

    #[test]
    fn guarded_turns_errors_into_failed_results() {
        let result = guarded("probe", || Err(Error::unsupported("missing piece")));
        assert!(!result.passed);
        assert!(result.details.contains("did not finish"));
        assert!(result.details.contains("missing piece"));
    }
}
