use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("graph must have at least one vertex")]
pub struct EmptyGraph;

/// Recursion parameters derived from the vertex count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Params {
    pub n: usize,
    /// Relaxation rounds in pivot finding, and the base-case settle budget.
    pub k: usize,
    /// Each level splits its range into about `2^t` pieces.
    pub t: usize,
    /// Level of the top-level call.
    pub l_max: usize,
}

/// `k = floor(log2(n)^(1/3))`, `t = floor(log2(n)^(2/3))`,
/// `l_max = ceil(log2(n) / t)`, each clamped to at least 1.
pub fn compute_params(n: usize) -> Result<Params, EmptyGraph> {
    if n == 0 {
        return Err(EmptyGraph);
    }
    let log_n = (n as f64).log2();
    // Exact cubes such as 27 must not round down to 2.999...
    let k = floor_root(log_n, 1.0 / 3.0);
    let t = floor_root(log_n, 2.0 / 3.0);
    let l_max = ((log_n / t as f64) - 1e-12).ceil().max(1.0) as usize;
    Ok(Params { n, k, t, l_max })
}

fn floor_root(x: f64, exponent: f64) -> usize {
    ((x.powf(exponent) + 1e-9).floor() as usize).max(1)
}

impl Params {
    /// `2^(level * t)`, saturating.
    pub fn level_capacity(&self, level: usize) -> usize {
        pow2(level.saturating_mul(self.t))
    }

    /// Batch size of the queue at `level`: `2^((level - 1) * t)`.
    pub fn batch_size(&self, level: usize) -> usize {
        self.level_capacity(level.saturating_sub(1))
    }

    /// A level stops early once it has completed this many vertices: `k * 2^(level * t)`.
    pub fn completion_limit(&self, level: usize) -> usize {
        self.k.saturating_mul(self.level_capacity(level))
    }
}

fn pow2(exp: usize) -> usize {
    if exp >= usize::BITS as usize - 1 {
        usize::MAX
    } else {
        1usize << exp
    }
}
