//! The `verify` subcommand: recompute every closed-form constant the
//! library claims and tabulate expected vs computed.

use serde::Serialize;

use quasihyp::invariants::{half_line_defect, half_line_growth_coefficient, Quadruple};
use quasihyp::optimize::snowflake_line;
use quasihyp::{c0_finite, maximize_delta, random_finite_metric, Point, Result, SpaceSpec};

#[derive(Debug, Serialize)]
pub struct Row {
    pub claim: String,
    pub expected: f64,
    pub computed: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Quadruple>,
}

impl Row {
    fn simple(claim: &str, expected: f64, computed: f64, tol: f64) -> Self {
        Row {
            claim: claim.to_string(),
            expected,
            computed,
            pass: (computed - expected).abs() <= tol,
            witness: None,
        }
    }

    fn banded(
        claim: &str,
        expected: f64,
        computed: f64,
        below: f64,
        above: f64,
        witness: Quadruple,
    ) -> Self {
        let pass = computed >= expected - below && computed <= expected + above;
        Row {
            claim: claim.to_string(),
            expected,
            computed,
            pass,
            witness: if pass { None } else { Some(witness) },
        }
    }
}

const BUDGET: u64 = 100_000;
const RESTARTS: u32 = 20;

fn coords(v: &[f64]) -> Point {
    Point::Coords(v.to_vec())
}

pub fn run(seed: u64) -> Result<Vec<Row>> {
    let mut rows = Vec::new();

    // Supremum over the Euclidean unit-square corners.
    let square = SpaceSpec::lp(2, 2.0).restrict(&[
        coords(&[0.0, 0.0]),
        coords(&[1.0, 0.0]),
        coords(&[1.0, 1.0]),
        coords(&[0.0, 1.0]),
    ])?;
    rows.push(Row::simple(
        "euclidean_sqrt2",
        std::f64::consts::SQRT_2,
        c0_finite(&square)?.value,
        1e-12,
    ));

    // Witness ratios and the full constant of the p-norm planes.
    for p in [1.0, 1.5, 2.0, 3.0, f64::INFINITY] {
        let space = SpaceSpec::lp(2, p);
        let (w1, w2) = if p.is_infinite() {
            (1.0, 2.0)
        } else {
            (2f64.powf(1.0 / p), 2f64.powf(1.0 - 1.0 / p))
        };
        let q1 = Quadruple::from_points(
            &space,
            [
                &coords(&[-1.0, 1.0]),
                &coords(&[1.0, -1.0]),
                &coords(&[-1.0, -1.0]),
                &coords(&[1.0, 1.0]),
            ],
        )?;
        let q2 = Quadruple::from_points(
            &space,
            [
                &coords(&[0.0, 1.0]),
                &coords(&[0.0, -1.0]),
                &coords(&[-1.0, 0.0]),
                &coords(&[1.0, 0.0]),
            ],
        )?;
        let dev = (q1.delta_ratio()? - w1)
            .abs()
            .max((q2.delta_ratio()? - w2).abs());
        rows.push(Row::simple(&format!("lp_witness_p{p}"), 0.0, dev, 1e-12));

        let res = maximize_delta(&space, BUDGET, RESTARTS, seed.wrapping_add(1), None)?;
        rows.push(Row::banded(
            &format!("lp_constant_p{p}"),
            w1.max(w2),
            res.best_value,
            1e-3,
            1e-6,
            res.witness,
        ));
    }

    // Snowflaked max-norm plane sits exactly at 2^α.
    for alpha in [0.4, 0.8] {
        let space = SpaceSpec::snowflake(SpaceSpec::lp(2, f64::INFINITY), alpha);
        let res = maximize_delta(&space, BUDGET, RESTARTS, seed.wrapping_add(2), None)?;
        rows.push(Row::banded(
            &format!("max_norm_snowflake_a{alpha}"),
            2f64.powf(alpha),
            res.best_value,
            1e-3,
            1e-6,
            res.witness,
        ));
    }

    // Entrywise α-powers of random metrics never exceed 2^α.
    let mut worst_gap = f64::NEG_INFINITY;
    for i in 0..20u64 {
        let n = 4 + (i as usize * 5) % 9;
        let fm = random_finite_metric(n, seed.wrapping_add(100 + i));
        for alpha in [0.3, 0.7] {
            let c0 = c0_finite(&fm.snowflake(alpha)?)?.value;
            worst_gap = worst_gap.max(c0 - 2f64.powf(alpha));
        }
    }
    rows.push(Row {
        claim: "snowflake_cap".into(),
        expected: 0.0,
        computed: worst_gap,
        pass: worst_gap <= 1e-12,
        witness: None,
    });

    // Snowflaked line: root, constant, and optimizer agreement.
    rows.push(Row::simple(
        "snowflake_line_m_half",
        1.25,
        snowflake_line::root_m(0.5)?,
        1e-12,
    ));
    rows.push(Row::simple(
        "snowflake_line_constant_half",
        5f64.sqrt() / 2.0,
        snowflake_line::constant(0.5)?,
        1e-12,
    ));
    for alpha in [0.25, 0.5, 0.75] {
        let target = snowflake_line::constant(alpha)?;
        let space = SpaceSpec::snowflake(SpaceSpec::EuclideanLine, alpha);
        let res = maximize_delta(&space, BUDGET, RESTARTS, seed.wrapping_add(3), None)?;
        rows.push(Row::banded(
            &format!("snowflake_line_match_a{alpha}"),
            target,
            res.best_value,
            1e-4,
            1e-4,
            res.witness,
        ));
    }

    // Half-line defect growth coefficient and boundedness.
    let t = 1e8;
    let ratio = half_line_defect(0.75, [t, 4.0 * t, 0.0, 2.0 * t])?
        / (half_line_growth_coefficient(0.75) * t.powf(0.5));
    rows.push(Row::simple("half_line_growth", 1.0, ratio, 0.01));
    let mut bounded_max = f64::NEG_INFINITY;
    for exp in 3..=9 {
        let s = 10f64.powi(exp);
        bounded_max = bounded_max.max(half_line_defect(0.25, [s, 4.0 * s, 0.0, 2.0 * s])?);
    }
    rows.push(Row {
        claim: "half_line_bounded".into(),
        expected: 1.0,
        computed: bounded_max,
        pass: bounded_max <= 1.0,
        witness: None,
    });

    Ok(rows)
}

pub fn to_csv(rows: &[Row]) -> String {
    let mut out = String::from("claim,expected,computed,pass\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.claim, r.expected, r.computed, r.pass
        ));
    }
    out
}
