#![allow(dead_code)]

use orbitadm::io::corpus;
use orbitadm::io::ProblemFile;
use orbitadm::rational::{int, ratio, Rational};
use orbitadm::MonomialDatum;
use rand::Rng;

pub struct CorpusDatum {
    pub name: &'static str,
    pub problem: ProblemFile,
    pub datum: MonomialDatum,
}

pub fn corpus_data() -> Vec<CorpusDatum> {
    corpus::entries()
        .iter()
        .map(|e| {
            let problem = e.problem();
            let datum = MonomialDatum::new(&problem.algebra, &problem.generators, &problem.functional)
                .unwrap_or_else(|err| panic!("{}: {err}", e.name));
            CorpusDatum {
                name: e.name,
                problem,
                datum,
            }
        })
        .collect()
}

/// Dyadic rational in `[-bound, bound]` with step `1/1024`, exactly
/// representable as `f64`.
pub fn dyadic<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    ratio(rng.gen_range(-bound * 1024..=bound * 1024), 1024)
}

pub fn dyadic_point<R: Rng>(rng: &mut R, len: usize, bound: i64) -> Vec<Rational> {
    (0..len).map(|_| dyadic(rng, bound)).collect()
}

pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    ratio(rng.gen_range(-9..=9), rng.gen_range(1..=5))
}

pub fn int_point<R: Rng>(rng: &mut R, len: usize, bound: i64) -> Vec<Rational> {
    (0..len).map(|_| int(rng.gen_range(-bound..=bound))).collect()
}
