//! Seeded random operators, string paths and bipartitions for randomized
//! checks. All generators take an explicit RNG so runs are reproducible.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gf2::BitRow;
use crate::lattice::{CodeKind, CodeLayout, StringKind, StringPath};
use crate::pauli::PauliOperator;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform Pauli with a uniform phase in `{1, i, -1, -i}`.
pub fn random_pauli<R: Rng>(rng: &mut R, n: usize) -> PauliOperator {
    let phase = rng.gen_range(0..4);
    random_pauli_with_phase(rng, n, phase)
}

fn random_pauli_with_phase<R: Rng>(rng: &mut R, n: usize, phase: u8) -> PauliOperator {
    let mut x = BitRow::zeros(n);
    let mut z = BitRow::zeros(n);
    for q in 0..n {
        x.set(q, rng.gen());
        z.set(q, rng.gen());
    }
    PauliOperator::from_parts(x, z, phase).expect("sizes match")
}

/// Uniform Hermitian Pauli: the sign in front of the letters is `+` or `-`.
pub fn random_hermitian<R: Rng>(rng: &mut R, n: usize) -> PauliOperator {
    let p = random_pauli_with_phase(rng, n, 0);
    let fix = (4 - p.letter_phase()) % 4;
    let p = p.times_i_pow(fix);
    if rng.gen() {
        p.neg()
    } else {
        p
    }
}

/// Random walk of `steps` nearest-neighbor moves from a uniform start; walls
/// stop the walk on the surface, edges wrap on the torus.
pub fn random_string_path<R: Rng>(rng: &mut R, layout: &CodeLayout, steps: usize) -> StringPath {
    let d = layout.d;
    let kind = if rng.gen() { StringKind::X } else { StringKind::Z };
    let (mut r, mut c) = (rng.gen_range(0..d), rng.gen_range(0..d));
    let mut qubits = vec![layout.qubit(r, c)];
    for _ in 0..steps {
        let moves: Vec<(isize, isize)> = [(-1, 0), (1, 0), (0, -1), (0, 1)]
            .into_iter()
            .filter(|&(dr, dc)| {
                layout.kind == CodeKind::Toric || {
                    let (nr, nc) = (r as isize + dr, c as isize + dc);
                    (0..d as isize).contains(&nr) && (0..d as isize).contains(&nc)
                }
            })
            .collect();
        let &(dr, dc) = moves.choose(rng).expect("every site has a neighbor");
        r = (r as isize + dr).rem_euclid(d as isize) as usize;
        c = (c as isize + dc).rem_euclid(d as isize) as usize;
        qubits.push(layout.qubit(r, c));
    }
    StringPath::new(kind, qubits)
}

/// An X string along part of a row and a Z string along part of a column,
/// sharing exactly one qubit.
pub fn crossing_pair<R: Rng>(rng: &mut R, layout: &CodeLayout) -> (StringPath, StringPath) {
    let d = layout.d;
    let (r, c) = (rng.gen_range(0..d), rng.gen_range(0..d));
    let segment = |rng: &mut R, at: usize| {
        let lo = rng.gen_range(0..=at);
        let hi = rng.gen_range(at..d);
        lo..=hi
    };
    let cols = segment(rng, c);
    let rows = segment(rng, r);
    let x = StringPath::new(StringKind::X, cols.map(|cc| layout.qubit(r, cc)).collect());
    let z = StringPath::new(StringKind::Z, rows.map(|rr| layout.qubit(rr, c)).collect());
    (x, z)
}

/// A nonempty proper subset of `0..n` chosen uniformly among sizes, sorted.
pub fn random_region<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let size = rng.gen_range(1..n);
    let mut all: Vec<usize> = (0..n).collect();
    all.shuffle(rng);
    let mut region = all[..size].to_vec();
    region.sort_unstable();
    region
}
