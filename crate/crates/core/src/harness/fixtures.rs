//! Built-in example algebras.

use crate::algebra::{FiniteAlgebra, Operation};

fn cyclic(name: &str, n: usize) -> FiniteAlgebra {
    FiniteAlgebra::new(
        name,
        n,
        vec![
            Operation::from_fn("+", 2, n, |a| (a[0] + a[1]) % n),
            Operation::from_fn("-", 1, n, |a| (n - a[0]) % n),
            Operation::from_fn("0", 0, n, |_| 0),
        ],
    )
    .expect("valid cyclic group")
}

/// One-element algebra without operations.
pub fn triv1() -> FiniteAlgebra {
    FiniteAlgebra::new("TRIV1", 1, vec![]).unwrap()
}

pub fn z2() -> FiniteAlgebra {
    cyclic("Z2", 2)
}

pub fn z3() -> FiniteAlgebra {
    cyclic("Z3", 3)
}

pub fn z4() -> FiniteAlgebra {
    cyclic("Z4", 4)
}

/// Klein four group as `Z2 x Z2`, elements encoded as two-bit vectors.
pub fn v4() -> FiniteAlgebra {
    FiniteAlgebra::new(
        "V4",
        4,
        vec![
            Operation::from_fn("+", 2, 4, |a| a[0] ^ a[1]),
            Operation::from_fn("-", 1, 4, |a| a[0]),
            Operation::from_fn("0", 0, 4, |_| 0),
        ],
    )
    .unwrap()
}

/// Permutations of {0,1,2} as images of (0,1,2), in the element order
/// e, (12), (13), (23), (123), (132).
const S3_PERMS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [1, 0, 2],
    [2, 1, 0],
    [0, 2, 1],
    [1, 2, 0],
    [2, 0, 1],
];

fn s3_index(p: [usize; 3]) -> usize {
    S3_PERMS.iter().position(|&q| q == p).unwrap()
}

/// Symmetric group on three letters with multiplication, inverse and
/// identity; `x * y` applies `y` first.
pub fn s3() -> FiniteAlgebra {
    let compose = |a: &[usize]| {
        let (f, g) = (S3_PERMS[a[0]], S3_PERMS[a[1]]);
        s3_index([f[g[0]], f[g[1]], f[g[2]]])
    };
    let inverse = |a: &[usize]| {
        let f = S3_PERMS[a[0]];
        let mut inv = [0; 3];
        for (i, &fi) in f.iter().enumerate() {
            inv[fi] = i;
        }
        s3_index(inv)
    };
    FiniteAlgebra::new(
        "S3",
        6,
        vec![
            Operation::from_fn("*", 2, 6, compose),
            Operation::from_fn("inv", 1, 6, inverse),
            Operation::from_fn("e", 0, 6, |_| 0),
        ],
    )
    .unwrap()
}

/// Two-element lattice.
pub fn l2() -> FiniteAlgebra {
    FiniteAlgebra::new(
        "L2",
        2,
        vec![
            Operation::from_fn("meet", 2, 2, |a| a[0].min(a[1])),
            Operation::from_fn("join", 2, 2, |a| a[0].max(a[1])),
        ],
    )
    .unwrap()
}

/// Two-element meet-semilattice.
pub fn sl2() -> FiniteAlgebra {
    FiniteAlgebra::new(
        "SL2",
        2,
        vec![Operation::from_fn("meet", 2, 2, |a| a[0].min(a[1]))],
    )
    .unwrap()
}

pub fn builtin_fixtures() -> Vec<FiniteAlgebra> {
    vec![triv1(), z2(), z3(), z4(), v4(), s3(), l2(), sl2()]
}

/// Group given by generating permutations, with multiplication, inverse and
/// identity. Elements are numbered in breadth-first order from the identity.
pub fn permutation_group(name: &str, generators: &[Vec<usize>]) -> FiniteAlgebra {
    let degree = generators[0].len();
    let compose = |f: &[usize], g: &[usize]| g.iter().map(|&x| f[x]).collect::<Vec<_>>();
    let mut elements: Vec<Vec<usize>> = vec![(0..degree).collect()];
    let mut i = 0;
    while i < elements.len() {
        for g in generators {
            let h = compose(g, &elements[i]);
            if !elements.contains(&h) {
                elements.push(h);
            }
        }
        i += 1;
    }
    let n = elements.len();
    let index = |p: &[usize]| elements.iter().position(|q| q == p).unwrap();
    let mul: Vec<usize> = (0..n * n)
        .map(|k| index(&compose(&elements[k / n], &elements[k % n])))
        .collect();
    let inv: Vec<usize> = (0..n)
        .map(|a| (0..n).find(|&b| mul[a * n + b] == 0).unwrap())
        .collect();
    FiniteAlgebra::new(
        name,
        n,
        vec![
            Operation::new("*", 2, mul),
            Operation::new("inv", 1, inv),
            Operation::new("e", 0, vec![0]),
        ],
    )
    .unwrap()
}

/// Commutative ring on `0..n` given by its addition and multiplication.
fn ring(name: &str, n: usize, add: impl Fn(usize, usize) -> usize, mul: impl Fn(usize, usize) -> usize) -> FiniteAlgebra {
    let neg: Vec<usize> = (0..n).map(|a| (0..n).find(|&b| add(a, b) == 0).unwrap()).collect();
    FiniteAlgebra::new(
        name,
        n,
        vec![
            Operation::from_fn("+", 2, n, |a| add(a[0], a[1])),
            Operation::new("-", 1, neg),
            Operation::new("0", 0, vec![0]),
            Operation::from_fn("*", 2, n, |a| mul(a[0], a[1])),
        ],
    )
    .unwrap()
}

/// `Z2 x {0,1}` with `m = (x - y + z, pixley)` and a unary twist
/// `(g, s) -> (g, s + g)`. Con is the chain `0 < ker(g) < 1` with a
/// nonabelian lower and an abelian upper cover.
pub fn twisted_pixley() -> FiniteAlgebra {
    let pixley = |x: usize, y: usize, z: usize| if x == y { z } else { x };
    FiniteAlgebra::new(
        "ZP",
        4,
        vec![
            Operation::from_fn("m", 3, 4, move |a| {
                let g = (a[0] / 2 + a[1] / 2 + a[2] / 2) % 2;
                2 * g + pixley(a[0] % 2, a[1] % 2, a[2] % 2)
            }),
            Operation::from_fn("u", 1, 4, |a| 2 * (a[0] / 2) + ((a[0] % 2) ^ (a[0] / 2))),
        ],
    )
    .unwrap()
}

/// Structured Maltsev algebras beyond the built-in table: small groups,
/// local rings whose monolith centralizer sits strictly inside, and an
/// algebra with a nonabelian cover under an abelian one.
pub fn extended_corpus() -> Vec<FiniteAlgebra> {
    let t = |v: &[usize]| v.to_vec();
    vec![
        cyclic("Z6", 6),
        permutation_group("Z2xZ4", &[t(&[1, 0, 2, 3, 4, 5]), t(&[0, 1, 3, 4, 5, 2])]),
        permutation_group("Z2^3", &[t(&[1, 0, 2, 3, 4, 5]), t(&[0, 1, 3, 2, 4, 5]), t(&[0, 1, 2, 3, 5, 4])]),
        permutation_group("D4", &[t(&[1, 2, 3, 0]), t(&[3, 2, 1, 0])]),
        permutation_group(
            "Q8",
            // left regular action of i and j on 1,i,j,k,-1,-i,-j,-k
            &[t(&[1, 4, 3, 6, 5, 0, 7, 2]), t(&[2, 7, 4, 1, 6, 3, 0, 5])],
        ),
        permutation_group("A4", &[t(&[1, 2, 0, 3]), t(&[1, 0, 3, 2])]),
        permutation_group("S3xZ2", &[t(&[1, 0, 2, 3, 4]), t(&[1, 2, 0, 3, 4]), t(&[0, 1, 2, 4, 3])]),
        ring("Z4R", 4, |a, b| (a + b) % 4, |a, b| (a * b) % 4),
        // a + bx encoded as 2b + a
        ring("Z2[x]/x2", 4, |a, b| a ^ b, |a, b| {
            let (a0, a1, b0, b1) = (a & 1, a >> 1, b & 1, b >> 1);
            (a0 & b0) | (((a0 & b1) ^ (a1 & b0)) << 1)
        }),
        twisted_pixley(),
    ]
}

/// Looks up built-in fixtures first, then the extended corpus.
pub fn fixture(name: &str) -> Option<FiniteAlgebra> {
    builtin_fixtures()
        .into_iter()
        .chain(extended_corpus())
        .find(|a| a.name().eq_ignore_ascii_case(name))
}
