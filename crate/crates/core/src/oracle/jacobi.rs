use crate::error::Result;
use crate::modulus::ModulusSpec;

use super::complete_k;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiTriple {
    pub t: f64,
    pub sn: f64,
    pub cn: f64,
    pub dn: f64,
}

/// `sn, cn, dn` at `t` for `m = 1 - eps`.
///
/// The argument is folded into `[0, K]` with the half-period and reflection
/// symmetries. On `[0, K/2]` the descending Landen (AGM) recursion is used
/// directly; on `(K/2, K]` it is evaluated at `K - t` and mapped back through
/// `sn(K - x) = cn x / dn x`, which keeps `cn` and `dn` accurate at the turning
/// point where both are O(sqrt(eps)).
pub fn jacobi_sn(t: f64, spec: &ModulusSpec) -> Result<JacobiTriple> {
    if spec.is_degenerate() {
        let sech = 1.0 / t.cosh();
        return Ok(JacobiTriple {
            t,
            sn: t.tanh(),
            cn: sech,
            dn: sech,
        });
    }
    let k = complete_k(spec)?;
    let k_prime = spec.k_prime();

    let odd = if t < 0.0 { -1.0 } else { 1.0 };
    let mut r = t.abs() % (4.0 * k);
    let mut sign_sn = odd;
    let mut sign_cn = 1.0;
    if r >= 2.0 * k {
        r -= 2.0 * k;
        sign_sn = -sign_sn;
        sign_cn = -sign_cn;
    }
    if r > k {
        r = 2.0 * k - r;
        sign_cn = -sign_cn;
    }

    let (sn, cn, dn) = if r <= 0.5 * k {
        landen(r, spec.m(), k_prime)
    } else {
        let (s, c, d) = landen(k - r, spec.m(), k_prime);
        (c / d, k_prime * s / d, k_prime / d)
    };
    Ok(JacobiTriple {
        t,
        sn: sign_sn * sn,
        cn: sign_cn * cn,
        dn,
    })
}

const MAX_LANDEN_STEPS: usize = 40;

fn landen(u: f64, m: f64, k_prime: f64) -> (f64, f64, f64) {
    let mut a = [0.0f64; MAX_LANDEN_STEPS + 1];
    let mut c = [0.0f64; MAX_LANDEN_STEPS + 1];
    a[0] = 1.0;
    c[0] = m.sqrt();
    let mut b = k_prime;
    let mut n = 0;
    while n < MAX_LANDEN_STEPS && c[n].abs() > f64::EPSILON * a[n] {
        let an = a[n];
        a[n + 1] = 0.5 * (an + b);
        c[n + 1] = 0.5 * (an - b);
        b = (an * b).sqrt();
        n += 1;
    }
    if n == 0 {
        let (s, co) = u.sin_cos();
        return (s, co, 1.0);
    }

    let mut phi = (1u64 << n) as f64 * a[n] * u;
    let mut phi_prev = phi;
    for j in (1..=n).rev() {
        phi_prev = phi;
        phi = 0.5 * (phi + (c[j] / a[j] * phi.sin()).asin());
    }
    let (s, co) = phi.sin_cos();
    (s, co, co / (phi_prev - phi).cos())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(eps: f64) -> ModulusSpec {
        ModulusSpec::new(eps).unwrap()
    }

    // Independent 30-digit references: (t, eps, sn, cn, dn).
    const REF: &[(f64, f64, f64, f64, f64)] = &[
        (
            1.0,
            0.01,
            0.762_447_722_744_659_05,
            0.647_049_820_401_399_63,
            0.651_526_465_602_640_49,
        ),
        (
            0.5,
            0.01,
            0.462_289_399_299_146_92,
            0.886_729_108_181_091_52,
            0.887_933_345_574_248_36,
        ),
        (
            3.0,
            0.1,
            0.990_630_599_937_832_54,
            -0.136_568_717_013_853_39,
            0.341_739_539_737_691_13,
        ),
        (
            2.5,
            1e-6,
            0.986_614_528_183_853_7,
            0.163_069_840_180_677_65,
            0.163_072_824_789_352_85,
        ),
        (
            10.0,
            0.01,
            -0.991_420_744_860_682,
            -0.130_709_244_737_663_55,
            0.164_055_044_400_626_47,
        ),
    ];

    #[test]
    fn reference_values() {
        for &(t, eps, sn, cn, dn) in REF {
            let j = jacobi_sn(t, &spec(eps)).unwrap();
            assert!(
                (j.sn - sn).abs() < 1e-13,
                "sn({t}|{eps}) = {} vs {sn}",
                j.sn
            );
            assert!(
                (j.cn - cn).abs() < 1e-13,
                "cn({t}|{eps}) = {} vs {cn}",
                j.cn
            );
            assert!(
                (j.dn - dn).abs() < 1e-13,
                "dn({t}|{eps}) = {} vs {dn}",
                j.dn
            );
        }
    }

    #[test]
    fn initial_condition() {
        for eps in [1.0, 0.3, 1e-3, 1e-10] {
            let j = jacobi_sn(0.0, &spec(eps)).unwrap();
            assert_eq!((j.sn, j.cn, j.dn), (0.0, 1.0, 1.0));
        }
    }

    #[test]
    fn quarter_period_turning_point() {
        let s = spec(0.01);
        let k = complete_k(&s).unwrap();
        let j = jacobi_sn(k, &s).unwrap();
        assert!((j.sn - 1.0).abs() < 1e-15);
        assert!(j.cn.abs() < 1e-15);
        assert!((j.dn - 0.1).abs() < 1e-15);
    }

    #[test]
    fn circular_limit() {
        let s = spec(1.0);
        for t in [0.3, 2.0, -7.5] {
            let j = jacobi_sn(t, &s).unwrap();
            assert!((j.sn - t.sin()).abs() < 1e-15);
            assert!((j.cn - t.cos()).abs() < 1e-15);
            assert_eq!(j.dn, 1.0);
        }
    }

    #[test]
    fn separatrix_branch() {
        let j = jacobi_sn(1.3, &ModulusSpec::separatrix()).unwrap();
        assert_eq!(j.sn, 1.3f64.tanh());
        assert_eq!(j.cn, 1.0 / 1.3f64.cosh());
        assert_eq!(j.dn, j.cn);
    }

    #[test]
    fn tiny_negative_argument_keeps_sign() {
        let j = jacobi_sn(-1e-20, &spec(0.01)).unwrap();
        assert!(j.sn < 0.0 && (j.sn / -1e-20 - 1.0).abs() < 1e-15);
    }
}
