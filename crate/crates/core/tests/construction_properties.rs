//! Property tests for the envelope constants and the nested rectangle
//! family: defining identities, aspect conditioning, disjointness, and
//! nesting across randomized admissible inputs.

use dirmax_core::construction::{
    build_nested_family, verify_union_growth, EnvelopeConstants, LEVEL_CAP,
};
use dirmax_core::lacunary::LacunarySequence;
use dirmax_core::Error;
use proptest::prelude::*;
use std::f64::consts::PI;

const REL: f64 = 1e-12;

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1e-300)
}

proptest! {
    #[test]
    fn envelope_constants_satisfy_their_defining_identities(
        lo in 0.05f64..0.9,
        frac in 0.02f64..0.98,
        base in 0.05f64..1.0,
    ) {
        let hi = lo + frac * (0.95 - lo).max(1e-3);
        prop_assume!(lo < hi && hi < 1.0);
        let c = EnvelopeConstants::new(lo, hi, base).unwrap();

        prop_assert!(close(c.aspect_lo * (1.0 / hi - 1.0) * base, 1.0, REL));
        prop_assert!(close(c.aspect_hi * c.aspect_hi - c.aspect_lo * c.aspect_lo, 4.0,
            REL * c.aspect_hi * c.aspect_hi));
        prop_assert!(close(c.area_coeff * 2.0 * PI, c.aspect_lo, REL));
        prop_assert!(close(c.maximal_coeff * 4.0 * c.aspect_hi, PI, REL));
        prop_assert!(close(
            c.levelset_coeff * c.area_coeff * c.maximal_coeff,
            2.0 * (1.0 / lo).ln(),
            REL,
        ));
    }

    #[test]
    fn aspect_stays_conditioned_and_sandwiched(
        lo in 0.05f64..0.9,
        frac in 0.02f64..0.98,
        base in 0.05f64..1.0,
        level in 0usize..=12,
    ) {
        let hi = lo + frac * (0.95 - lo).max(1e-3);
        prop_assume!(lo < hi && hi < 1.0);
        let c = EnvelopeConstants::new(lo, hi, base).unwrap();

        let stable = c.aspect_at(level);
        let scale = lo.powi(-(level as i32));
        let naive = (4.0 + c.aspect_lo * c.aspect_lo * scale * scale).sqrt();
        prop_assert!(close(stable, naive, REL));
        prop_assert!(stable >= c.aspect_lo * scale * (1.0 - REL));
        prop_assert!(stable <= c.aspect_hi * scale * (1.0 + REL));
    }

    #[test]
    fn validated_geometric_windows_build_disjoint_nested_families(
        theta0 in 0.05f64..1.2,
        sigma in 0.35f64..0.9,
    ) {
        let env = (0.75 * sigma, (1.2 * sigma).min(0.98));
        prop_assume!(env.0 < env.1);
        let seq = LacunarySequence::geometric(theta0, sigma, env).unwrap();
        let window = match seq.validate(14) {
            Ok(w) => w,
            Err(_) => return Ok(()),
        };
        prop_assume!(window.len() >= 3);

        let consts = EnvelopeConstants::from_window(&window).unwrap();
        let family = build_nested_family(3, &window, &consts).unwrap();

        let mut prev_height = f64::INFINITY;
        for level in &family.levels {
            prop_assert!(level.rect.length() <= prev_height * (1.0 + REL));
            prop_assert!(level.rect.length() <= 1.0 / (level.level.max(2) as f64 - 1.0));
            prev_height = level.rect.height();

            let report = verify_union_growth(level, None).unwrap();
            prop_assert!(report.predicate_disjoint, "level {}", level.level);
            prop_assert!(report.max_half_overlap_rel <= 1e-12);
            prop_assert!(report.pass, "level {} slack {}", level.level, report.slack);
        }
    }
}

#[test]
fn default_family_gaps_clear_the_closed_form_floor() {
    let seq = LacunarySequence::geometric(0.5, 0.6, (0.5, 0.8)).unwrap();
    let window = seq.validate(30).unwrap();
    let consts = EnvelopeConstants::from_window(&window).unwrap();
    let family = build_nested_family(10, &window, &consts).unwrap();

    for level in &family.levels {
        let k = level.level;
        let floor =
            consts.base_slope * consts.ratio_lo.powi(k as i32 - 1) * (1.0 - consts.ratio_hi)
                / 2.0;
        for i in 0..level.angles.len() {
            for j in (i + 1)..level.angles.len() {
                let gap = (level.angles[i] - level.angles[j]).tan();
                assert!(
                    gap >= floor * (1.0 - 1e-12),
                    "level {k}: pair ({i}, {j}) gap {gap} under floor {floor}"
                );
            }
        }
    }
}

#[test]
fn rejections_carry_the_right_error_kinds() {
    let increasing = LacunarySequence::explicit(vec![0.1, 0.2, 0.4], (0.4, 0.6));
    assert!(matches!(increasing, Err(Error::AngleOrder { .. })));

    let tight = LacunarySequence::geometric(0.5, 0.6, (0.7, 0.8)).unwrap();
    assert!(matches!(tight.validate(8), Err(Error::EnvelopeRejected { .. })));

    let seq = LacunarySequence::geometric(0.5, 0.6, (0.5, 0.8)).unwrap();
    let window = seq.validate(6).unwrap();
    let consts = EnvelopeConstants::from_window(&window).unwrap();
    assert!(matches!(
        build_nested_family(window.len() + 1, &window, &consts),
        Err(Error::WindowTooShort { .. })
    ));
    assert!(matches!(
        build_nested_family(LEVEL_CAP + 1, &window, &consts),
        Err(Error::LevelCapExceeded { .. })
    ));
}
