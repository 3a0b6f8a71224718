use std::collections::BTreeSet;

use anyhow::{bail, Context, Result};
use clap::{Args, Subcommand, ValueEnum};
use dissolution::generators::{
    generate_biased_hardness, generate_dissolution_hardness, generate_random, two_factor_to_biased22,
    AlphaMode, GraphMode, RandomSpec, XCInstance,
};
use dissolution::{Graph, Instance};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Subcommand)]
pub enum GenerateCommand {
    /// Plain instance that is feasible iff the exact-cover instance is
    XcDissolution {
        #[command(flatten)]
        xc: XcArgs,
        #[arg(long, default_value_t = 2)]
        s: u64,
        #[arg(long, default_value_t = 1)]
        delta_s: u64,
    },
    /// (t, t) biased instance that reaches its target iff the exact-cover
    /// instance has a cover
    XcBiased {
        #[command(flatten)]
        xc: XcArgs,
    },
    /// (2, 2) biased instance on disjoint cycles, plus random chords
    TwoFactor {
        /// Cycle lengths, comma separated; each must be a multiple of four
        #[arg(long, value_delimiter = ',', required = true)]
        cycles: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        chords: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[command(flatten)]
        common: CommonArgs,
    },
    Grid {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    Clique {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Args)]
pub struct XcArgs {
    #[arg(long)]
    universe: usize,
    #[arg(long, default_value_t = 3)]
    set_size: usize,
    /// Sets as comma-separated elements joined by ';', e.g. "0,1,2;3,4,5"
    #[arg(long, conflicts_with = "random_sets")]
    sets: Option<String>,
    /// Draw this many sets uniformly at random instead
    #[arg(long)]
    random_sets: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
pub struct CommonArgs {
    #[arg(long)]
    s: u64,
    #[arg(long)]
    delta_s: u64,
    #[arg(long, value_enum, default_value_t = AlphaArg::None)]
    alpha: AlphaArg,
    /// Probability of a district being all A-supporters (bernoulli only)
    #[arg(long, default_value_t = 0.5)]
    alpha_p: f64,
    #[arg(long)]
    r_alpha: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlphaArg {
    None,
    Uniform,
    Bernoulli,
}

impl CommonArgs {
    fn spec(&self, graph: GraphMode) -> RandomSpec {
        RandomSpec {
            graph,
            s: self.s,
            delta_s: self.delta_s,
            alpha: match self.alpha {
                AlphaArg::None => AlphaMode::None,
                AlphaArg::Uniform => AlphaMode::Uniform,
                AlphaArg::Bernoulli => AlphaMode::Bernoulli(self.alpha_p),
            },
            r_alpha: self.r_alpha,
            seed: self.seed,
        }
    }
}

impl XcArgs {
    fn build(&self) -> Result<XCInstance> {
        let sets = match (&self.sets, self.random_sets) {
            (Some(text), None) => text
                .split(';')
                .filter(|s| !s.trim().is_empty())
                .map(|set| {
                    set.split(',')
                        .map(|x| x.trim().parse::<usize>())
                        .collect::<Result<Vec<_>, _>>()
                        .with_context(|| format!("bad set {set:?}"))
                })
                .collect::<Result<Vec<_>>>()?,
            (None, Some(m)) => {
                if self.set_size > self.universe {
                    bail!("set size {} exceeds the universe {}", self.set_size, self.universe);
                }
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                (0..m)
                    .map(|_| sample(&mut rng, self.universe, self.set_size).into_vec())
                    .collect()
            }
            _ => bail!("give exactly one of --sets and --random-sets"),
        };
        Ok(XCInstance::new(self.universe, self.set_size, sets)?)
    }
}

fn two_factor(cycles: &[usize], chords: usize, seed: u64) -> Result<Instance> {
    let n: usize = cycles.iter().sum();
    let mut factor = BTreeSet::new();
    let mut start = 0;
    for &len in cycles {
        if len < 3 {
            bail!("cycles need at least three vertices, got {len}");
        }
        for i in 0..len {
            let (u, v) = (start + i, start + (i + 1) % len);
            factor.insert((u.min(v), u.max(v)));
        }
        start += len;
    }
    let mut edges = factor.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs = n * n.saturating_sub(1) / 2;
    for _ in 0..chords.min(pairs - factor.len()) {
        loop {
            let (u, v) = (rng.random_range(0..n), rng.random_range(0..n));
            if u != v && edges.insert((u.min(v), u.max(v))) {
                break;
            }
        }
    }
    let edges: Vec<_> = edges.into_iter().collect();
    let g = Graph::new(n, &edges)?;
    let (inst, _) = two_factor_to_biased22(&g, &factor)?;
    Ok(inst)
}

pub fn run(cmd: GenerateCommand) -> Result<Instance> {
    Ok(match cmd {
        GenerateCommand::XcDissolution { xc, s, delta_s } => {
            generate_dissolution_hardness(&xc.build()?, s, delta_s)?.instance
        }
        GenerateCommand::XcBiased { xc } => generate_biased_hardness(&xc.build()?)?.instance,
        GenerateCommand::TwoFactor { cycles, chords, seed } => two_factor(&cycles, chords, seed)?,
        GenerateCommand::Random { n, p, common } => generate_random(&common.spec(GraphMode::Gnp { n, p }))?,
        GenerateCommand::Grid { rows, cols, common } => {
            generate_random(&common.spec(GraphMode::Grid { rows, cols }))?
        }
        GenerateCommand::Clique { n, common } => generate_random(&common.spec(GraphMode::Clique { n }))?,
    })
}
