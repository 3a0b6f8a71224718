use crate::error::GeneratorError;

/// Nonnegative solution of `x * s - y * delta_s = target`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BezoutPair {
    pub x: u64,
    pub y: u64,
    pub target: i64,
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `(g, u, v)` with `a * u + b * v = g`.
fn extended_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, u, v) = extended_gcd(b, a.rem_euclid(b));
        (g, v, u - a.div_euclid(b) * v)
    }
}

fn div_ceil(a: i128, b: i128) -> i128 {
    -((-a).div_euclid(b))
}

/// The solution of `x * s - y * delta_s = target` with `x >= 0`,
/// `y >= lower_bound` and `x` as small as possible.
pub fn bezout_nonneg(
    s: u64,
    delta_s: u64,
    target: i64,
    lower_bound: u64,
) -> Result<BezoutPair, GeneratorError> {
    if s == 0 || delta_s == 0 {
        return Err(GeneratorError::InvalidParameters("s and delta_s must be positive".into()));
    }
    let g = gcd(s, delta_s);
    if target.rem_euclid(g as i64) != 0 {
        return Err(GeneratorError::NotDivisible {
            s,
            delta_s,
            target,
            gcd: g,
        });
    }
    let (a, b) = (s as i128, delta_s as i128);
    let (gi, u, v) = extended_gcd(a, b);
    let k = target as i128 / gi;
    // a*(u*k) + b*(v*k) = target, so y0 = -v*k
    let (x0, y0) = (u * k, -v * k);
    let (step_x, step_y) = (b / gi, a / gi);
    let j = div_ceil(-x0, step_x).max(div_ceil(lower_bound as i128 - y0, step_y));
    let (x, y) = (x0 + j * step_x, y0 + j * step_y);
    Ok(BezoutPair {
        x: x as u64,
        y: y as u64,
        target,
    })
}
