//! Random algebras that carry a basic Maltsev operation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{for_each_tuple, FiniteAlgebra, Operation, MAX_ARITY};
use crate::partition::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzConfig {
    pub seed: u64,
    pub size_min: usize,
    pub size_max: usize,
    /// Each algebra gets between 0 and this many extra operations.
    pub extra_ops: usize,
    pub extra_arity: usize,
    pub count: usize,
    /// Draw a random equivalence first and keep it a congruence, so that
    /// lattices other than `{0, 1}` show up.
    #[serde(default)]
    pub planted: bool,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            seed: 1,
            size_min: 2,
            size_max: 4,
            extra_ops: 1,
            extra_arity: 2,
            count: 100,
            planted: false,
        }
    }
}

impl FuzzConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.size_min < 2 || self.size_min > self.size_max {
            return Err(format!(
                "size range {}..={} must satisfy 2 <= min <= max",
                self.size_min, self.size_max
            ));
        }
        if self.size_max > 16 {
            return Err("fuzz sizes above 16 are not supported".into());
        }
        if self.extra_arity > 2 {
            return Err(format!("extra operation arity {} exceeds 2", self.extra_arity));
        }
        debug_assert!(self.extra_arity <= MAX_ARITY);
        Ok(())
    }
}

/// The `index`-th algebra of the corpus for `cfg`. Each index draws from its
/// own ChaCha stream, so items are independent of evaluation order.
pub fn random_maltsev_algebra(cfg: &FuzzConfig, index: u64) -> FiniteAlgebra {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index);
    let n = rng.random_range(cfg.size_min..=cfg.size_max);
    let blocks: Vec<Vec<usize>> = if cfg.planted {
        let labels: Vec<usize> = (0..n).map(|_| rng.random_range(0..n)).collect();
        Partition::from_labels(&labels).blocks()
    } else {
        (0..n).map(|x| vec![x]).collect()
    };
    let q = blocks.len();
    let mut block_of = vec![0; n];
    for (b, members) in blocks.iter().enumerate() {
        for &x in members {
            block_of[x] = b;
        }
    }
    // tables over the quotient, then a random lift inside the image block
    let mq = Operation::from_fn("m", 3, q, |a| maltsev_cell(&mut rng, q, a));
    let m = Operation::from_fn("m", 3, n, |a| {
        if a[1] == a[2] {
            a[0]
        } else if a[0] == a[1] {
            a[2]
        } else {
            let image = &blocks[mq.apply(q, &[block_of[a[0]], block_of[a[1]], block_of[a[2]]])];
            image[rng.random_range(0..image.len())]
        }
    });
    let mut ops = vec![m];
    let extra = rng.random_range(0..=cfg.extra_ops);
    for k in 0..extra {
        let mut fq = Vec::new();
        for_each_tuple(q, cfg.extra_arity, |_| fq.push(rng.random_range(0..q)));
        let fq = Operation::new("f", cfg.extra_arity, fq);
        let mut table = Vec::new();
        let mut args = Vec::with_capacity(cfg.extra_arity);
        for_each_tuple(n, cfg.extra_arity, |a| {
            args.clear();
            args.extend(a.iter().map(|&x| block_of[x]));
            let image = &blocks[fq.apply(q, &args)];
            table.push(image[rng.random_range(0..image.len())]);
        });
        ops.push(Operation::new(format!("f{k}"), cfg.extra_arity, table));
    }
    FiniteAlgebra::new(format!("F{}_{}", cfg.seed, index), n, ops).expect("generated tables are valid")
}

fn maltsev_cell(rng: &mut ChaCha8Rng, n: usize, a: &[usize]) -> usize {
    if a[1] == a[2] {
        a[0]
    } else if a[0] == a[1] {
        a[2]
    } else {
        rng.random_range(0..n)
    }
}

pub fn fuzz_corpus(cfg: &FuzzConfig) -> Vec<FiniteAlgebra> {
    (0..cfg.count as u64).map(|i| random_maltsev_algebra(cfg, i)).collect()
}
