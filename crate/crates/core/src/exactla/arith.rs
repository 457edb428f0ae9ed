//! Scalar arithmetic in Z/m for m < 2^31. Values are kept in `[0, m)` as
//! `u64` so that a product of two residues never overflows.

#[inline]
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[inline]
pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    a * b % m
}

#[inline]
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    let s = a + b;
    if s >= m {
        s - m
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + m - b
    }
}

#[inline]
pub fn neg_mod(a: u64, m: u64) -> u64 {
    if a == 0 {
        0
    } else {
        m - a
    }
}

/// Reduces a signed integer into `[0, m)`.
#[inline]
pub fn reduce_i64(a: i64, m: u64) -> u64 {
    a.rem_euclid(m as i64) as u64
}

/// Extended Euclid on signed integers: returns `(g, x, y)` with `a*x + b*y = g`, `g >= 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i64, 0i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (g, x, _) = ext_gcd(a as i64, m as i64);
    (g == 1).then(|| reduce_i64(x, m))
}

/// Returns a unit `u` of Z/m with `u*a = gcd(a, m) (mod m)`.
///
/// For `a = 0` this is `u = 1` (the gcd is `m`, i.e. zero).
pub fn unit_normalizer(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    if a == 0 {
        return 1;
    }
    let g = gcd(a, m);
    let (a1, m1) = (a / g, m / g);
    let mut u = inv_mod(a1 % m1, m1).unwrap_or(0);
    if m1 == 1 {
        u = 1;
    }
    // u is only determined mod m1; shift it until it is a unit mod m.
    while gcd(u, m) != 1 {
        u += m1;
    }
    u % m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ext_gcd_identity() {
        for a in -30i64..30 {
            for b in -30i64..30 {
                let (g, x, y) = ext_gcd(a, b);
                assert_eq!(a * x + b * y, g);
                assert_eq!(g as u64, gcd(a.unsigned_abs(), b.unsigned_abs()));
            }
        }
    }

    #[test]
    fn normalizer_hits_the_gcd() {
        for m in 1u64..=60 {
            for a in 0..m {
                let u = unit_normalizer(a, m);
                assert_eq!(gcd(u, m), 1, "u={u} not a unit mod {m}");
                assert_eq!(mul_mod(u, a, m), gcd(a, m) % m, "a={a} m={m}");
            }
        }
    }

    #[test]
    fn inverses() {
        assert_eq!(inv_mod(3, 10), Some(7));
        assert_eq!(inv_mod(4, 10), None);
        assert_eq!(inv_mod(5, 1), Some(0));
    }
}
