//! Globally adaptive 15-point Gauss-Kronrod quadrature and the weakly
//! singular integrals it is used for.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::modulus::ModulusSpec;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// 7-point Gauss weights at XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_733_097_765_449_961_669,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const MAX_INTERVALS: usize = 4000;

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * x;
        let pair = f(center - dx) + f(center + dx);
        kronrod += w * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Segment {
        a,
        b,
        value: kronrod * half,
        err: ((kronrod - gauss) * half).abs(),
    }
}

/// Integrates `f` over `[a, b]`, starting from the given interior breakpoints,
/// bisecting the interval with the largest error estimate until the total
/// estimate drops below `max(abs_tol, rel_tol * |I|)`.
///
/// Returns `(value, error_estimate)`.
pub fn gauss_kronrod_adaptive<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    abs_tol: f64,
    rel_tol: f64,
) -> Result<(f64, f64)> {
    let mut edges = vec![a];
    edges.extend(breakpoints.iter().copied().filter(|&x| x > a && x < b));
    edges.push(b);

    let mut heap: BinaryHeap<Segment> = edges.windows(2).map(|w| gk15(&f, w[0], w[1])).collect();
    loop {
        let total: f64 = heap.iter().map(|s| s.value).sum();
        let err: f64 = heap.iter().map(|s| s.err).sum();
        if err <= abs_tol.max(rel_tol * total.abs()) {
            return Ok((total, err));
        }
        if heap.len() >= MAX_INTERVALS {
            return Ok((total, err));
        }
        let worst = heap.pop().expect("at least one segment");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Cannot bisect further in binary64.
            heap.push(worst);
            return Ok((total, err));
        }
        heap.push(gk15(&f, worst.a, mid));
        heap.push(gk15(&f, mid, worst.b));
    }
}

fn accept((value, err): (f64, f64)) -> Result<f64> {
    if err <= 1e-12 * value.abs().max(1.0) {
        Ok(value)
    } else {
        Err(Error::QuadratureFailure { abs_err: err })
    }
}

/// `int_0^1 y^k dy / ((y + 1)^(k + 1) sqrt((1 - y)(1 - (1 - mu) y)))` for
/// `k` in `0..=4`.
///
/// With `y = 1 - s^2` the endpoint singularity disappears and the integrand
/// becomes `2 (1 - s^2)^k / ((2 - s^2)^(k + 1) sqrt(mu + (1 - mu) s^2))`,
/// smooth but peaked over a width `sqrt(mu)` around `s = 0`.
pub fn quad_weak_singularity(k: u32, spec: &ModulusSpec) -> Result<f64> {
    if k > 4 {
        return Err(Error::InvalidOrder {
            order: k,
            expected: "0..=4",
        });
    }
    let mu = spec.mu();
    let integrand = move |s: f64| {
        let s2 = s * s;
        let y = 1.0 - s2;
        2.0 * y.powi(k as i32) / ((2.0 - s2).powi(k as i32 + 1) * (mu + (1.0 - mu) * s2).sqrt())
    };
    let knee = mu.sqrt();
    accept(gauss_kronrod_adaptive(
        integrand,
        0.0,
        1.0,
        &[0.25 * knee, knee, 4.0 * knee],
        1e-16,
        1e-15,
    )?)
}

/// `K(m)` straight from its defining integral, as a check on the AGM.
pub fn k_by_quadrature(spec: &ModulusSpec) -> Result<f64> {
    if spec.is_degenerate() {
        return Err(Error::DegenerateModulus);
    }
    let eps = spec.eps();
    let integrand = move |s: f64| {
        let s2 = s * s;
        let y = 1.0 - s2;
        // 1 - m y^2 = (1 - y^2) + eps y^2, with 1 - y^2 = s^2 (2 - s^2).
        let one_minus_y2 = s2 * (2.0 - s2);
        2.0 / ((2.0 - s2) * (one_minus_y2 + eps * y * y)).sqrt()
    };
    let knee = eps.sqrt();
    accept(gauss_kronrod_adaptive(
        integrand,
        0.0,
        1.0,
        &[0.25 * knee, knee, 4.0 * knee],
        1e-16,
        1e-15,
    )?)
}
