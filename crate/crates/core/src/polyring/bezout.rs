use crate::error::{Error, Result};

/// `(a, b, g)` with `a n + b m = g = gcd(n, m) >= 0`.
///
/// Among all solutions the one with `|a|` minimal is returned, ties going to
/// `a >= 0`.
pub fn int_bezout(n: i64, m: i64) -> Result<(i64, i64, i64)> {
    if n == 0 && m == 0 {
        return Err(Error::InvalidArgument("int_bezout(0, 0) is undefined".into()));
    }
    if m == 0 {
        return Ok((n.signum(), 0, n.abs()));
    }
    if n == 0 {
        return Ok((0, m.signum(), m.abs()));
    }
    let (n, m) = (n as i128, m as i128);
    let (mut r0, mut r1) = (n, m);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 < 0 {
        r0 = -r0;
        s0 = -s0;
    }
    let g = r0;
    let step = (m / g).abs();
    let low = s0.rem_euclid(step);
    let high = low - step;
    let a = if low <= -high { low } else { high };
    let b = (g - a * n) / m;
    Ok((a as i64, b as i64, g as i64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(int_bezout(3, 4).unwrap(), (-1, 1, 1));
        assert_eq!(int_bezout(5, 6).unwrap(), (-1, 1, 1));
        for q in [3, 4, 5, 7, 8, 9, 11, 13] {
            assert_eq!(int_bezout(1, q - 1).unwrap(), (1, 0, 1));
        }
        assert_eq!(int_bezout(0, -4).unwrap(), (0, -1, 4));
        assert_eq!(int_bezout(-6, 0).unwrap(), (-1, 0, 6));
        assert!(int_bezout(0, 0).is_err());
    }

    #[test]
    fn certificate_and_minimality_on_grid() {
        for n in 1..=1000i64 {
            for m in 1..=1000i64 {
                let (a, b, g) = int_bezout(n, m).unwrap();
                assert_eq!(a * n + b * m, g);
                assert_eq!(g as u64, crate::arith::gcd(n as u64, m as u64));
                // no other solution a + k m/g has smaller |a| (or equal with a >= 0)
                let step = m / g;
                for alt in [a - step, a + step] {
                    assert!(alt.abs() > a.abs() || (alt.abs() == a.abs() && a >= 0));
                }
            }
        }
    }
}
