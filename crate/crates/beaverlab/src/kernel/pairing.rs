//! The Cantor pairing bijection between naturals and pairs of naturals.
//!
//! Everything downstream that needs to bundle two numbers into one (program
//! payloads, notation codes, statement encodings) goes through this single
//! bijection, so `unpair(pair(a, b)) = (a, b)` is the only algebra to
//! remember.

use num_bigint::BigUint;

/// `(a + b)(a + b + 1)/2 + b`; sends (0,0) to 0 and walks anti-diagonals.
pub fn pair(a: &BigUint, b: &BigUint) -> BigUint {
    let s = a + b;
    (&s * (&s + 1u32)) / 2u32 + b
}

/// Inverse of [`pair`], total on all naturals.
pub fn unpair(n: &BigUint) -> (BigUint, BigUint) {
    // w = floor((sqrt(8n+1) - 1)/2) is the anti-diagonal index
    let w = ((n * 8u32 + 1u32).sqrt() - 1u32) / 2u32;
    let t = (&w * (&w + 1u32)) / 2u32;
    let b = n - t;
    let a = w - &b;
    (a, b)
}

pub fn pair_u64(a: u64, b: u64) -> BigUint {
    pair(&BigUint::from(a), &BigUint::from(b))
}

/// Three-way bundling, right-nested: `(a, (b, c))`.
pub fn pair3(a: &BigUint, b: &BigUint, c: &BigUint) -> BigUint {
    pair(a, &pair(b, c))
}

pub fn unpair3(n: &BigUint) -> (BigUint, BigUint, BigUint) {
    let (a, bc) = unpair(n);
    let (b, c) = unpair(&bc);
    (a, b, c)
}

/// Handy when a code is known to be small; gives up honestly otherwise.
pub fn to_u64(n: &BigUint) -> Option<u64> {
    use num_traits::ToPrimitive;
    n.to_u64()
}

pub fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_starts_at_zero_and_walks_antidiagonals() {
        assert_eq!(pair_u64(0, 0), big(0));
        assert_eq!(pair_u64(1, 0), big(1));
        assert_eq!(pair_u64(0, 1), big(2));
        assert_eq!(pair_u64(3, 5), big(41));
    }

    #[test]
    fn unpair_inverts_pair_exhaustively() {
        for a in 0..100u64 {
            for b in 0..100u64 {
                let n = pair_u64(a, b);
                assert_eq!(unpair(&n), (big(a), big(b)));
            }
        }
    }

    #[test]
    fn pair_inverts_unpair_on_an_initial_segment() {
        for n in 0..10_000u64 {
            let n = big(n);
            let (a, b) = unpair(&n);
            assert_eq!(pair(&a, &b), n);
        }
    }

    #[test]
    fn triple_bundling_round_trips() {
        for n in (0..5_000u64).step_by(7) {
            let n = big(n);
            let (a, b, c) = unpair3(&n);
            assert_eq!(pair3(&a, &b, &c), n);
        }
    }
}
