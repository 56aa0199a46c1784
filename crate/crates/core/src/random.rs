//! Random networks and rates for property tests and the `--seed` option.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::model::{make_network, Complex, Edge, Network, RateAssignment};
use crate::scalar::{rat, Rational};

/// Shape limits for sampled networks.
#[derive(Clone, Debug)]
pub struct SampleSpec {
    pub max_vertices: usize,
    pub max_component: usize,
    pub max_species: usize,
    /// Probability of each possible extra edge inside a component.
    pub chord_probability: f64,
    /// Largest stoichiometric coefficient.
    pub max_coefficient: i64,
    /// Probability that a kinetic complex differs from the stoichiometric one.
    pub generalized_probability: f64,
}

impl Default for SampleSpec {
    fn default() -> Self {
        SampleSpec {
            max_vertices: 8,
            max_component: 8,
            max_species: 4,
            chord_probability: 0.3,
            max_coefficient: 2,
            generalized_probability: 0.5,
        }
    }
}

/// A positive rational `p/q` with `p, q` in `1..=max`.
pub fn positive_rational<R: Rng + ?Sized>(rng: &mut R, max: i64) -> Rational {
    rat(rng.gen_range(1..=max), rng.gen_range(1..=max))
}

pub fn random_rates<R: Rng + ?Sized>(rng: &mut R, net: &Network) -> RateAssignment {
    let values = (0..net.edges().len()).map(|_| positive_rational(rng, 9)).collect();
    RateAssignment::new(net, values).expect("positive rates")
}

fn random_complex<R: Rng + ?Sized>(rng: &mut R, n: usize, max: i64) -> Complex {
    Complex::new((0..n).map(|s| (s, Rational::from_integer(rng.gen_range(0..=max).into()))))
}

fn kinetic_for<R: Rng + ?Sized>(rng: &mut R, stoich: &Complex, n: usize, spec: &SampleSpec) -> Complex {
    if rng.gen_bool(spec.generalized_probability) {
        Complex::new((0..n).map(|s| {
            let q = rng.gen_range(1..=3);
            (s, rat(rng.gen_range(0..=2 * q), q))
        }))
    } else {
        stoich.clone()
    }
}

fn assemble<R: Rng + ?Sized>(
    rng: &mut R,
    spec: &SampleSpec,
    m: usize,
    pairs: Vec<(usize, usize)>,
) -> Network {
    let n = rng.gen_range(1..=spec.max_species);
    let species = (1..=n).map(|i| format!("X{i}")).collect();
    let stoich: Vec<Complex> = (0..m).map(|_| random_complex(rng, n, spec.max_coefficient)).collect();
    let kinetic = stoich.iter().map(|c| Some(kinetic_for(rng, c, n, spec))).collect();
    let edges = pairs
        .into_iter()
        .map(|(i, j)| Edge { source: i, target: j, symbol: format!("k{}_{}", i + 1, j + 1) })
        .collect();
    make_network(species, stoich, kinetic, edges).expect("sampled network is valid")
}

/// Splits `0..m` into randomly interleaved groups of size at most `cap`.
fn random_partition<R: Rng + ?Sized>(rng: &mut R, m: usize, cap: usize) -> Vec<Vec<usize>> {
    let mut vertices: Vec<usize> = (0..m).collect();
    vertices.shuffle(rng);
    let mut groups = Vec::new();
    let mut rest = &vertices[..];
    while !rest.is_empty() {
        let size = rng.gen_range(1..=rest.len().min(cap));
        groups.push(rest[..size].to_vec());
        rest = &rest[size..];
    }
    groups
}

/// Each component is a directed cycle through its vertices plus random chords,
/// so the result is weakly reversible.
pub fn random_weakly_reversible<R: Rng + ?Sized>(rng: &mut R, spec: &SampleSpec) -> Network {
    let m = rng.gen_range(1..=spec.max_vertices);
    let mut pairs = Vec::new();
    for group in random_partition(rng, m, spec.max_component) {
        if group.len() < 2 {
            continue;
        }
        for w in 0..group.len() {
            pairs.push((group[w], group[(w + 1) % group.len()]));
        }
        for &i in &group {
            for &j in &group {
                if i != j && !pairs.contains(&(i, j)) && rng.gen_bool(spec.chord_probability) {
                    pairs.push((i, j));
                }
            }
        }
    }
    pairs.shuffle(rng);
    assemble(rng, spec, m, pairs)
}

/// Any loop-free digraph; usually not weakly reversible.
pub fn random_network<R: Rng + ?Sized>(rng: &mut R, spec: &SampleSpec) -> Network {
    let m = rng.gen_range(1..=spec.max_vertices);
    let mut pairs = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if i != j && rng.gen_bool(spec.chord_probability) {
                pairs.push((i, j));
            }
        }
    }
    pairs.shuffle(rng);
    assemble(rng, spec, m, pairs)
}
