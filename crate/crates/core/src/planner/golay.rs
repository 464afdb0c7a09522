use serde::{Deserialize, Serialize};

use crate::ring::Alphabet;

/// Exponents showing that n is a Golay number.
///
/// Binary: `n = 2^a·10^b·26^c`. Quaternary: `n = 2^(a+u)·3^b·5^c·11^d·13^e`
/// with `b+c+d+e ≤ a+2u+1` and `u ≤ c+e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "kebab-case")]
pub enum GolayWitness {
    Binary { a: u32, b: u32, c: u32 },
    Quaternary { a: u32, b: u32, c: u32, d: u32, e: u32, u: u32 },
}

impl GolayWitness {
    /// The number this witness represents.
    pub fn value(&self) -> u64 {
        match *self {
            GolayWitness::Binary { a, b, c } => 2u64.pow(a) * 10u64.pow(b) * 26u64.pow(c),
            GolayWitness::Quaternary { a, b, c, d, e, u } => {
                2u64.pow(a + u) * 3u64.pow(b) * 5u64.pow(c) * 11u64.pow(d) * 13u64.pow(e)
            }
        }
    }
}

/// Exponents of 2, 3, 5, 11, 13 and the cofactor left over.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub(crate) struct Factors {
    pub two: u32,
    pub three: u32,
    pub five: u32,
    pub eleven: u32,
    pub thirteen: u32,
    pub rest: u64,
}

impl Factors {
    pub fn of(mut n: u64) -> Factors {
        assert!(n >= 1, "factoring zero");
        let mut take = |p: u64| {
            let mut k = 0;
            while n % p == 0 {
                n /= p;
                k += 1;
            }
            k
        };
        let two = take(2);
        let three = take(3);
        let five = take(5);
        let eleven = take(11);
        let thirteen = take(13);
        Factors {
            two,
            three,
            five,
            eleven,
            thirteen,
            rest: n,
        }
    }

    pub fn smooth(&self) -> bool {
        self.rest == 1
    }
}

pub fn is_binary_golay_number(n: u64) -> Option<GolayWitness> {
    if n == 0 {
        return None;
    }
    let f = Factors::of(n);
    if f.rest != 1 || f.three != 0 || f.eleven != 0 {
        return None;
    }
    // Every 5 and 13 must ride on its own factor 2.
    let a = f.two.checked_sub(f.five + f.thirteen)?;
    Some(GolayWitness::Binary {
        a,
        b: f.five,
        c: f.thirteen,
    })
}

/// Returns the witness with the smallest u.
pub fn is_quaternary_golay_number(n: u64) -> Option<GolayWitness> {
    if n == 0 {
        return None;
    }
    let f = Factors::of(n);
    if !f.smooth() {
        return None;
    }
    let odd = f.three + f.five + f.eleven + f.thirteen;
    let u_max = f.two.min(f.five + f.thirteen);
    (0..=u_max)
        .find(|&u| odd <= f.two + u + 1)
        .map(|u| GolayWitness::Quaternary {
            a: f.two - u,
            b: f.three,
            c: f.five,
            d: f.eleven,
            e: f.thirteen,
            u,
        })
}

/// Golay-number test for an alphabet. Anything wider than binary uses the
/// quaternary form, since quaternary pairs are polyphase pairs.
pub fn golay_witness(alphabet: Alphabet, n: u64) -> Option<GolayWitness> {
    match alphabet {
        Alphabet::Binary => is_binary_golay_number(n),
        _ => is_quaternary_golay_number(n),
    }
}

/// All Golay numbers in `1..=limit`, ascending.
pub fn enumerate_golay_numbers(alphabet: Alphabet, limit: u64) -> Vec<u64> {
    (1..=limit).filter(|&n| golay_witness(alphabet, n).is_some()).collect()
}
