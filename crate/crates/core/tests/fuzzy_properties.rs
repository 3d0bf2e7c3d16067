//! Fuzzy engine properties, checked against a brute-force rule-by-rule oracle.

use certain_trust::fuzzy::{
    gaussian_mf, surface_grid, surface_grid_with, ConsequentPolicy, LinguisticVariable,
    MembershipFunction, RuleBase, TNorm, TERM_COUNT,
};
use proptest::prelude::*;

/// Direct evaluation: every rule clips (min) or scales (product) its own
/// consequent, the resulting sets are max-aggregated pointwise, and the centroid
/// is integrated with the trapezoid rule on a much finer grid than the engine
/// uses.
fn oracle(rb: &RuleBase, xs: &[f64], samples: usize, product: bool) -> f64 {
    let degrees: Vec<Vec<f64>> = rb
        .inputs()
        .iter()
        .zip(xs)
        .map(|(v, &x)| {
            let x = x.clamp(v.domain().lo(), v.domain().hi());
            v.terms().iter().map(|mf| gaussian_mf(x, mf)).collect()
        })
        .collect();
    let strengths: Vec<(f64, usize)> = rb
        .rules()
        .iter()
        .map(|r| {
            let s = r
                .antecedent
                .iter()
                .enumerate()
                .map(|(i, &term)| degrees[i][term])
                .fold(1.0, |a, b| if product { a * b } else { a.min(b) });
            (s, r.consequent)
        })
        .collect();
    let out = rb.output();
    let (lo, hi) = (out.domain().lo(), out.domain().hi());
    let h = (hi - lo) / (samples - 1) as f64;
    let (mut moment, mut mass) = (0.0, 0.0);
    for i in 0..samples {
        let y = lo + h * i as f64;
        let mu = strengths
            .iter()
            .map(|&(s, k)| {
                let m = gaussian_mf(y, &out.terms()[k]);
                if product {
                    s * m
                } else {
                    s.min(m)
                }
            })
            .fold(0.0, f64::max);
        let w = if i == 0 || i + 1 == samples { 0.5 } else { 1.0 };
        moment += w * y * mu;
        mass += w * mu;
    }
    moment / mass
}

fn unit_rulebase() -> RuleBase {
    RuleBase::generate_uniform(3, 0.0, 1.0).unwrap()
}

#[test]
fn all_medium_matches_oracle() {
    let rb = unit_rulebase();
    let crisp = rb.infer(&[0.5; 3]).unwrap().crisp;
    assert!((crisp - 0.5).abs() < 1e-6);
    for product in [true, false] {
        assert!((oracle(&rb, &[0.5; 3], 20001, product) - 0.5).abs() < 1e-9);
    }
}

// Frozen from adaptive quadrature of the continuous centroid at 30 digits.
const ALL_VERY_HIGH_PRODUCT: f64 = 0.915103;
const ALL_VERY_HIGH_MIN: f64 = 0.880622;
const ALL_ZERO_PERCENT_PRODUCT: f64 = 8.48967;
const ALL_ZERO_PERCENT_MIN: f64 = 11.9378;

#[test]
fn all_very_high_matches_oracle() {
    let rb = unit_rulebase();
    for (tnorm, frozen) in [
        (TNorm::Product, ALL_VERY_HIGH_PRODUCT),
        (TNorm::Min, ALL_VERY_HIGH_MIN),
    ] {
        let crisp = rb.infer_with(&[1.0; 3], tnorm).unwrap().crisp;
        let reference = oracle(&rb, &[1.0; 3], 20001, tnorm == TNorm::Product);
        assert!((reference - frozen).abs() < 1e-5, "{reference}");
        assert!((crisp - reference).abs() < 1e-3, "{crisp} vs {reference}");
        assert!((0.75..=1.0).contains(&crisp));
    }
    assert!(rb.infer(&[1.0; 3]).unwrap().crisp > rb.infer(&[0.5; 3]).unwrap().crisp);
}

#[test]
fn all_zero_percent_is_very_low() {
    let rb = RuleBase::generate_uniform(3, 0.0, 100.0).unwrap();
    for (tnorm, frozen) in [
        (TNorm::Product, ALL_ZERO_PERCENT_PRODUCT),
        (TNorm::Min, ALL_ZERO_PERCENT_MIN),
    ] {
        let crisp = rb.infer_with(&[0.0; 3], tnorm).unwrap().crisp;
        assert!((crisp - frozen).abs() < 0.1, "{crisp}");
        assert!(crisp < 20.0);
    }
}

#[test]
fn generated_policy_is_monotone() {
    for arity in 1..=4 {
        let rb = RuleBase::generate_uniform(arity, 0.0, 1.0).unwrap();
        assert_eq!(rb.policy(), ConsequentPolicy::Mean);
        assert_eq!(rb.rules().len(), TERM_COUNT.pow(arity as u32));
        for rule in rb.rules() {
            assert!(rule.consequent < TERM_COUNT);
            for i in 0..arity {
                if rule.antecedent[i] + 1 < TERM_COUNT {
                    let mut raised = rule.antecedent.clone();
                    raised[i] += 1;
                    assert!(rb.find_rule(&raised).unwrap().consequent >= rule.consequent);
                }
            }
        }
    }
}

#[test]
fn existence_surface_is_nearly_monotone() {
    let rb = RuleBase::generate_uniform(3, 0.0, 100.0).unwrap();
    let grid = surface_grid(&rb, 0, 1, None, 51).unwrap();
    let violations = grid.monotonicity_violations();
    let worst = violations.iter().map(|v| v.drop).fold(0.0, f64::max);
    println!(
        "{} monotonicity violations, largest drop {worst:.3e}",
        violations.len()
    );
    assert!(worst < 1e-9);
}

#[test]
fn min_surface_dips_are_measured() {
    // Clipped consequents shift mass between terms unevenly; record the dip.
    let rb = RuleBase::generate_uniform(3, 0.0, 100.0).unwrap();
    let grid = surface_grid_with(&rb, 0, 1, None, 51, TNorm::Min).unwrap();
    let worst = grid
        .monotonicity_violations()
        .iter()
        .map(|v| v.drop)
        .fold(0.0, f64::max);
    println!("min t-norm surface, largest drop {worst:.3e}");
    assert!(worst > 0.2 && worst < 1.0);
}

#[test]
fn parallel_surface_matches_serial_evaluation() {
    let rb = RuleBase::generate_uniform(3, 0.0, 100.0).unwrap();
    let grid = surface_grid(&rb, 2, 0, Some(&[10.0, 70.0, 0.0]), 9).unwrap();
    for (row, &y) in grid.y_values.iter().enumerate() {
        for (col, &x) in grid.x_values.iter().enumerate() {
            assert_eq!(grid.at(row, col), rb.infer(&[y, 70.0, x]).unwrap().crisp);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn gaussian_is_bounded_and_symmetric(center in -50.0..50.0f64, sigma in 0.01..20.0f64, d in 0.0..100.0f64) {
        let mf = MembershipFunction::new(center, sigma).unwrap();
        let (up, down) = (gaussian_mf(center + d, &mf), gaussian_mf(center - d, &mf));
        prop_assert!((up - down).abs() <= 1e-12);
        prop_assert!((0.0..=1.0).contains(&up));
        if d > 1e-6 * sigma {
            prop_assert!(up < 1.0);
        }
    }

    #[test]
    fn output_stays_in_domain(xs in prop::array::uniform3(-20.0..120.0f64)) {
        let rb = RuleBase::generate_uniform(3, 0.0, 100.0).unwrap();
        let out = rb.infer(&xs).unwrap();
        prop_assert!((0.0..=100.0).contains(&out.crisp));
        prop_assert!(out.firing_strengths.iter().all(|&s| s > 0.0 && s <= 1.0));
    }

    #[test]
    fn input_permutation_leaves_output_unchanged(xs in prop::array::uniform3(0.0..1.0f64)) {
        let rb = unit_rulebase();
        let base = rb.infer(&xs).unwrap().crisp;
        for perm in [[0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
            let permuted = perm.map(|i| xs[i]);
            prop_assert_eq!(rb.infer(&permuted).unwrap().crisp, base);
        }
    }

    #[test]
    fn small_perturbations_move_output_slightly(xs in prop::array::uniform3(0.0..1.0f64), which in 0usize..3, delta in -1e-6..1e-6f64) {
        let rb = unit_rulebase();
        let mut moved = xs;
        moved[which] += delta;
        let gap = (rb.infer(&xs).unwrap().crisp - rb.infer(&moved).unwrap().crisp).abs();
        prop_assert!(gap < 1e-3);
    }

    #[test]
    fn engine_tracks_fine_grid_oracle(xs in prop::array::uniform3(0.0..1.0f64)) {
        let rb = unit_rulebase();
        let crisp = rb.infer(&xs).unwrap().crisp;
        prop_assert!((crisp - oracle(&rb, &xs, 4001, true)).abs() < 1e-3);
        let crisp = rb.infer_with(&xs, TNorm::Min).unwrap().crisp;
        prop_assert!((crisp - oracle(&rb, &xs, 4001, false)).abs() < 1e-3);
    }

    #[test]
    fn fuzzify_degrees_follow_distance(x in 0.0..=1.0f64) {
        let v = LinguisticVariable::new("x", 0.0, 1.0).unwrap();
        let degrees = v.fuzzify(x);
        for (i, mf) in v.terms().iter().enumerate() {
            for (j, other) in v.terms().iter().enumerate() {
                if (x - mf.center()).abs() < (x - other.center()).abs() {
                    prop_assert!(degrees[i] > degrees[j]);
                }
            }
        }
    }
}
