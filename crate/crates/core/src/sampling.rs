//! Seeded random functionals, even elements and flow parameters.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coadjoint::{in_n0_plus, Functional};
use crate::scalar::{rat, Rational};
use crate::subspace::Element;
use crate::superalg::LieSuperalgebra;

pub const DEFAULT_SEED: u64 = 20_240_601;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Zero with probability 0.4, otherwise `±p/q` with `1 ≤ p, q ≤ 3`.
pub fn small_rational(r: &mut impl Rng) -> Rational {
    if r.gen_bool(0.4) {
        return Rational::zero();
    }
    let p: i64 = r.gen_range(1..=3);
    let q: i64 = r.gen_range(1..=3);
    if r.gen_bool(0.5) {
        rat(-p, q)
    } else {
        rat(p, q)
    }
}

pub fn random_functional(l: &LieSuperalgebra, r: &mut impl Rng) -> Functional {
    (0..l.dim_even()).map(|_| small_rational(r)).collect()
}

pub fn random_even(l: &LieSuperalgebra, r: &mut impl Rng) -> Element {
    let mut v = l.zero();
    for x in v.iter_mut().take(l.dim_even()) {
        *x = small_rational(r);
    }
    v
}

/// `count` functionals in `𝔫₀⁺`, drawn by rejection with a bounded number
/// of attempts; `λ = 0` is always admissible, so the list is never short.
pub fn functionals_in_n0_plus(l: &LieSuperalgebra, count: usize, r: &mut impl Rng) -> Vec<Functional> {
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        let f = if attempts > 50 * count { vec![Rational::zero(); l.dim_even()] } else { random_functional(l, r) };
        if in_n0_plus(l, &f) {
            out.push(f);
        }
    }
    out
}
