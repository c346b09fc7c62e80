//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Criteria listed in `KNOWN_RED` cannot be met by the formulas as given; they
//! still print FAIL with their measured numbers. The process exits non-zero if
//! any other criterion fails, or if a known-red one starts passing.

use std::f64::consts::LN_2;
use std::fs::File;
use std::io::BufWriter;
use std::process::ExitCode;

use jacobi_asymptotics::k_asymptotics::{
    HandbookKCoefficients, KSeriesCoefficients, K_SERIES_NUMERIC,
};
use jacobi_asymptotics::oracle::{k_error, ode_trajectory, quad_weak_singularity};
use jacobi_asymptotics::scan::{
    run_order, run_scan, uniform_grid, write_scan_csv, OrderConfig, OrderTarget, ScanConfig,
    WindowPolicy,
};
use jacobi_asymptotics::sn_asymptotics::{
    composite_first_half, composite_second_half, handbook_sn, inner_eval, inner_eval_printed_sign,
    seam_jumps, InnerExpansion, OuterExpansion, FIRST_ORDER_TURNING_TAU,
};
use jacobi_asymptotics::{
    complete_k, i0_closed_form, jacobi_sn, k_asymptotic, k_handbook, k_mu_series, outer_eval,
    period, ApproxKind, ModulusSpec,
};

const KNOWN_RED: [u32; 3] = [8, 10, 11];

type Criterion = (u32, &'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn spec(eps: f64) -> ModulusSpec {
    ModulusSpec::new(eps).unwrap()
}

fn max_over(xs: impl IntoIterator<Item = f64>) -> f64 {
    xs.into_iter().fold(0.0, f64::max)
}

/// Interior points of a uniform grid on `(a, b)`.
fn open_grid(a: f64, b: f64, samples: usize) -> Vec<f64> {
    let g = uniform_grid(a, b, samples + 2);
    g[1..g.len() - 1].to_vec()
}

fn fit(
    target: OrderTarget,
    eps_list: &[f64],
    window: WindowPolicy,
    order: u32,
) -> (f64, f64, Vec<f64>) {
    let f = run_order(&OrderConfig {
        target,
        eps_list: eps_list.to_vec(),
        window,
        order,
        samples: 2001,
    })
    .unwrap();
    (f.fitted_order, f.r_squared, f.max_errs)
}

fn c1_coefficients() -> Outcome {
    let exact = KSeriesCoefficients::exact();
    let mut worst = 0.0f64;
    for k in 0..5 {
        worst = worst.max((exact.const_part[k] - K_SERIES_NUMERIC.const_part[k]).abs());
        worst = worst.max((exact.log_coeff[k] - K_SERIES_NUMERIC.log_coeff[k]).abs());
    }
    let literal = [
        (exact.const_part[0], 1.386294361119891),
        (exact.log_coeff[0], 0.5),
        (exact.log_coeff[1], 0.125),
        (exact.log_coeff[2], 0.0703125),
        (exact.log_coeff[3], 0.048828125),
        (exact.log_coeff[4], 0.037384033203125),
    ];
    worst = worst.max(max_over(literal.iter().map(|(a, b)| (a - b).abs())));
    Outcome {
        pass: worst <= 1e-15,
        detail: format!("max |exact - printed| = {worst:e}"),
    }
}

fn c2_handbook_bound() -> Outcome {
    let eps = [0.9, 0.5, 0.1, 0.01, 0.001];
    let errs: Vec<f64> = eps
        .iter()
        .map(|&e| {
            k_error(k_handbook(&spec(e)).unwrap(), &spec(e))
                .unwrap()
                .abs()
        })
        .collect();
    let transcribed = max_over(eps.iter().map(|&e| {
        (HandbookKCoefficients::TRANSCRIBED.eval(e) - complete_k(&spec(e)).unwrap()).abs()
    }));
    Outcome {
        pass: errs.iter().all(|&e| e < 2e-8),
        detail: format!(
            "max |e| = {:e} (with a0 = 1.38662943 instead: {transcribed:e})",
            max_over(errs.iter().copied())
        ),
    }
}

fn c3_k_series_order() -> Outcome {
    let (p, r2, errs) = fit(
        OrderTarget::KAsymptotic,
        &[1e-1, 3e-2, 1e-2, 3e-3, 1e-3],
        WindowPolicy::Fixed,
        4,
    );
    Outcome {
        pass: p >= 4.5 && r2 >= 0.98,
        detail: format!("order {p:.4}, r^2 {r2:.6}, errors {errs:?}"),
    }
}

fn c4_mu_series() -> Outcome {
    let mut pass = true;
    let mut detail = String::new();
    for e in [1e-2, 1e-3] {
        let s = spec(e);
        let mu = k_error(k_mu_series(&s).unwrap(), &s).unwrap().abs();
        let asym = k_error(k_asymptotic(&s, 4).unwrap(), &s).unwrap().abs();
        pass &= mu <= 10.0 * asym;
        detail.push_str(&format!("eps={e}: mu {mu:e} vs asym4 {asym:e}; "));
    }
    Outcome { pass, detail }
}

fn c5_i0() -> Outcome {
    let worst = max_over([0.5, 0.1, 0.01, 1e-4].iter().map(|&mu| {
        let s = ModulusSpec::from_mu(mu).unwrap();
        (i0_closed_form(mu).unwrap() - quad_weak_singularity(0, &s).unwrap()).abs()
    }));
    Outcome {
        pass: worst <= 1e-11,
        detail: format!("max |closed - quadrature| = {worst:e}"),
    }
}

fn c6_oracle() -> Outcome {
    let (mut dual, mut anti, mut ident) = (0.0f64, 0.0f64, 0.0f64);
    for e in [0.1, 0.01] {
        let s = spec(e);
        let p = period(&s).unwrap();
        let grid = uniform_grid(0.0, p.full, 200);
        let ode = ode_trajectory(&grid, &s).unwrap();
        for (&t, &u) in grid.iter().zip(&ode) {
            let j = jacobi_sn(t, &s).unwrap();
            dual = dual.max((j.sn - u).abs());
            anti = anti.max((jacobi_sn(t + p.half, &s).unwrap().sn + j.sn).abs());
            ident = ident
                .max((j.sn * j.sn + j.cn * j.cn - 1.0).abs())
                .max((j.dn * j.dn + s.m() * j.sn * j.sn - 1.0).abs());
        }
    }
    Outcome {
        pass: dual <= 1e-9 && anti <= 1e-10 && ident <= 1e-12,
        detail: format!("landen-rk {dual:e}, antiperiod {anti:e}, identities {ident:e}"),
    }
}

fn c7_outer() -> Outcome {
    let (p, _, errs) = fit(
        OrderTarget::Sn(ApproxKind::Outer),
        &[0.1, 0.03, 0.01],
        WindowPolicy::Fixed,
        2,
    );
    let initial = OuterExpansion::a1(0.0) == 0.0
        && OuterExpansion::a2(0.0) == 0.0
        && OuterExpansion::a1_prime(0.0) == 0.0
        && OuterExpansion::a2_prime(0.0) == 0.0;
    let s = spec(0.01);
    let odd = uniform_grid(0.0, 3.0, 61).iter().all(|&t| {
        OuterExpansion::a1(-t) == -OuterExpansion::a1(t)
            && OuterExpansion::a2(-t) == -OuterExpansion::a2(t)
            && outer_eval(-t, &s, 2).unwrap() == -outer_eval(t, &s, 2).unwrap()
    });
    Outcome {
        pass: p >= 2.5 && initial && odd,
        detail: format!("order {p:.4}, errors {errs:?}, initial conditions {initial}, odd {odd}"),
    }
}

fn c8_inner_identities() -> Outcome {
    let v = InnerExpansion::matched(&spec(0.01));
    let printed1 = max_over(
        uniform_grid(-3.0, 3.0, 601)
            .iter()
            .map(|&x| v.printed_first_order_residual(x).abs()),
    );
    let printed2 = max_over(
        uniform_grid(-2.0, 2.0, 401)
            .iter()
            .map(|&x| v.printed_second_order_residual(x).abs()),
    );
    let fixed1 = max_over(
        uniform_grid(-3.0, 3.0, 601)
            .iter()
            .map(|&x| v.first_order_residual(x).abs()),
    );
    let fixed2 = max_over(
        uniform_grid(-2.0, 2.0, 401)
            .iter()
            .map(|&x| v.second_order_residual(x).abs()),
    );
    let turning = v
        .v1(FIRST_ORDER_TURNING_TAU)
        .abs()
        .max(v.v1_prime(FIRST_ORDER_TURNING_TAU).abs());
    Outcome {
        pass: printed1 <= 1e-10 && printed2 <= 1e-8 && turning <= 1e-15,
        detail: format!(
            "(v1')^2 = 4v1^2 + 2v1: {printed1:e}; second-order as given: {printed2:e}; \
             v1, v1' at 2ln2: {turning:e}; with -2v1 and -5v1^2: {fixed1:e}, {fixed2:e}"
        ),
    }
}

fn c9_sign() -> Outcome {
    let s = spec(0.01);
    let (mut plus, mut minus) = (0.0f64, 0.0f64);
    for tau in uniform_grid(0.0, 3.0, 601) {
        let t = tau - 0.5 * s.log_eps();
        let sn = jacobi_sn(t, &s).unwrap().sn;
        plus = plus.max((inner_eval(tau, &s, 1).unwrap() - sn).abs());
        minus = minus.max((inner_eval_printed_sign(tau, &s, 1).unwrap() - sn).abs());
    }
    Outcome {
        pass: 10.0 * plus <= minus,
        detail: format!(
            "+ sign {plus:e}, - sign {minus:e}, ratio {:.1}",
            minus / plus
        ),
    }
}

fn composite_claimed_max(eps: f64, samples: usize) -> f64 {
    let s = spec(eps);
    let h = 0.5 * s.log_eps();
    max_over(
        open_grid(h, -3.0 * h, samples)
            .iter()
            .map(|&t| (composite_first_half(t, &s) - jacobi_sn(t, &s).unwrap().sn).abs()),
    )
}

fn c10_composite() -> Outcome {
    let s = spec(0.01);
    let h = 0.5 * s.log_eps();
    let report = run_scan(&ScanConfig {
        eps: 0.01,
        kind: ApproxKind::CompositeFirstHalf,
        order: 1,
        t_min: h,
        t_max: -3.0 * h,
        samples: 1000,
    })
    .unwrap();
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("composite_eps0.01.csv");
    let written = File::create(&path)
        .map(BufWriter::new)
        .and_then(|f| write_scan_csv(&report.rows, f))
        .is_ok();

    let at = composite_claimed_max(0.01, 4000);
    let ladder: Vec<f64> = [0.03, 0.01, 0.003]
        .iter()
        .map(|&e| composite_claimed_max(e, 4000))
        .collect();
    let order = jacobi_asymptotics::scan::fit_order(&[0.03, 0.01, 0.003], &ladder)
        .unwrap()
        .fitted_order;
    let monotone = ladder.windows(2).all(|w| w[1] < w[0]);
    Outcome {
        pass: at <= 0.01 && written && monotone && order >= 0.9,
        detail: format!(
            "max on (ln eps/2, -3 ln eps/2) = {at:e}; ladder {ladder:?}, order {order:.3}; csv {}",
            if written {
                path.display().to_string()
            } else {
                "not written".into()
            }
        ),
    }
}

fn c11_handbook_divergence() -> Outcome {
    let s = spec(0.01);
    let k = complete_k(&s).unwrap();
    let grid = uniform_grid(k - 1.0, k + 1.0, 4001);
    let mut hb = 0.0f64;
    let mut comp = 0.0f64;
    for &t in &grid {
        let sn = jacobi_sn(t, &s).unwrap().sn;
        hb = hb.max((handbook_sn(t, &s) - sn).abs());
        comp = comp.max((composite_first_half(t, &s) - sn).abs());
    }
    Outcome {
        pass: hb > 0.05 && comp <= 0.01,
        detail: format!("handbook max {hb:e} (needs > 0.05), composite max {comp:e}"),
    }
}

fn c12_second_half() -> Outcome {
    let s = spec(0.01);
    let p = period(&s).unwrap();
    let mirror = max_over(uniform_grid(-2.3, 6.9, 2001).iter().map(|&t| {
        let first = (composite_first_half(t, &s) - jacobi_sn(t, &s).unwrap().sn).abs();
        let u = t + p.half;
        let second = (composite_second_half(u, &s).unwrap() - jacobi_sn(u, &s).unwrap().sn).abs();
        (first - second).abs()
    }));
    let jumps = seam_jumps(&s).unwrap();
    Outcome {
        pass: mirror <= 1e-12 && jumps.iter().all(|&j| j <= 10.0 * 0.01 * 0.01),
        detail: format!(
            "mirror {mirror:e}, seam jumps {:e} {:e}",
            jumps[0], jumps[1]
        ),
    }
}

/// Maximiser of a unimodal `f` on `[a, b]`.
fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > 1e-12 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

fn c13_turning_point() -> Outcome {
    let s = spec(1e-3);
    let predicted = -0.5 * s.log_eps() + 2.0 * LN_2;
    let argmax = golden_max(
        |t| jacobi_sn(t, &s).unwrap().sn,
        predicted - 1.0,
        predicted + 1.0,
    );
    let d = (argmax - predicted).abs();
    Outcome {
        pass: d <= 5e-3,
        detail: format!("argmax {argmax}, predicted {predicted}, |diff| {d:e}"),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        (1, "K-series coefficient fidelity", c1_coefficients),
        (2, "handbook K bound 2e-8", c2_handbook_bound),
        (3, "K-series convergence order", c3_k_series_order),
        (4, "mu-series equivalence", c4_mu_series),
        (5, "I0 closed form", c5_i0),
        (6, "oracle integrity", c6_oracle),
        (7, "outer expansion", c7_outer),
        (8, "inner identities", c8_inner_identities),
        (9, "sign adjudication", c9_sign),
        (10, "composite uniformity", c10_composite),
        (11, "handbook divergence near K", c11_handbook_divergence),
        (12, "second half and seams", c12_second_half),
        (13, "turning point", c13_turning_point),
    ];
    let mut unexpected = Vec::new();
    for (id, name, run) in criteria {
        let o = run();
        let known = KNOWN_RED.contains(&id);
        let tag = if o.pass { "PASS" } else { "FAIL" };
        let note = if known && !o.pass { " [known]" } else { "" };
        println!("{tag} {id:>2} {name}{note}: {}", o.detail);
        if o.pass == known {
            unexpected.push(id);
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: all criteria as expected, known red {KNOWN_RED:?}");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
