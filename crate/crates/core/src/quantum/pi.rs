use num_bigint::BigUint;

// arctan(1/x) · scale by the alternating Taylor series.
fn arctan_inv(x: u32, scale: &BigUint) -> BigUint {
    let x2 = BigUint::from(x) * x;
    let mut power = scale / x;
    let mut plus = power.clone();
    let mut minus = BigUint::ZERO;
    let mut k: u32 = 1;
    loop {
        power /= &x2;
        let term = &power / (2 * k + 1);
        if term == BigUint::ZERO {
            break;
        }
        if k % 2 == 1 {
            minus += term;
        } else {
            plus += term;
        }
        k += 1;
    }
    plus - minus
}

/// First `count` decimal digits of π, starting with the leading 3.
///
/// Machin's formula π = 16·arctan(1/5) − 4·arctan(1/239) in fixed-point
/// integer arithmetic with guard digits.
pub fn pi_digits(count: usize) -> Vec<u8> {
    if count == 0 {
        return Vec::new();
    }
    const GUARD: usize = 12;
    let scale = BigUint::from(10u32).pow((count - 1 + GUARD) as u32);
    let pi = arctan_inv(5, &scale) * 16u32 - arctan_inv(239, &scale) * 4u32;
    pi.to_string()
        .bytes()
        .take(count)
        .map(|b| b - b'0')
        .collect()
}
