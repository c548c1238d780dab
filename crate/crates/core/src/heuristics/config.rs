use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Base {
    /// Planar subgraph plus fixed-embedding edge insertion.
    PlmFix,
    /// Chordless cycle grown by star insertion.
    Ccm,
    /// Planar subgraph plus star reinsertion of edge endpoints.
    Mim,
}

/// Which endpoint of a deleted edge `mim` reinserts when neither is a cut
/// vertex. `G` compares degrees in the input graph, `F` in the graph of
/// deleted edges between non-cut vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MimVariant {
    Random,
    HighG,
    LowG,
    HighF,
    LowF,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Post {
    None,
    /// Reinsert every edge after all insertions, until a sweep stops helping.
    All,
    /// The same sweeps after every single insertion.
    Inc,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HeuristicConfig {
    pub base: Base,
    pub mim_variant: MimVariant,
    pub post: Post,
    pub srm: bool,
    pub remove_nonsimple: bool,
    pub seed: u64,
}

impl HeuristicConfig {
    pub fn new(base: Base) -> Self {
        HeuristicConfig {
            base,
            mim_variant: MimVariant::Both,
            post: Post::None,
            srm: false,
            remove_nonsimple: true,
            seed: 0,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_srm(mut self, srm: bool) -> Self {
        self.srm = srm;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("empty configuration")]
    Empty,
    #[error("unknown base `{0}`")]
    UnknownBase(String),
    #[error("unexpected `{token}` in `{config}`")]
    Unexpected { token: String, config: String },
}

impl MimVariant {
    pub const ALL: [MimVariant; 6] = [
        MimVariant::Random,
        MimVariant::HighG,
        MimVariant::LowG,
        MimVariant::HighF,
        MimVariant::LowF,
        MimVariant::Both,
    ];

    fn name(self) -> &'static str {
        match self {
            MimVariant::Random => "random",
            MimVariant::HighG => "highG",
            MimVariant::LowG => "lowG",
            MimVariant::HighF => "highF",
            MimVariant::LowF => "lowF",
            MimVariant::Both => "both",
        }
    }

    fn parse(token: &str) -> Option<Self> {
        let t = token.replace('_', "").to_ascii_lowercase();
        MimVariant::ALL
            .into_iter()
            .find(|v| v.name().to_ascii_lowercase() == t)
    }
}

impl fmt::Display for HeuristicConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.base {
            Base::PlmFix => {
                let post = match self.post {
                    Post::None => "none",
                    Post::All => "all",
                    Post::Inc => "inc",
                };
                write!(f, "fix-{post}")?;
            }
            Base::Ccm => f.write_str("ccm")?,
            Base::Mim => write!(f, "mim-{}", self.mim_variant.name())?,
        }
        if self.srm {
            f.write_str("-srm")?;
        }
        if !self.remove_nonsimple {
            f.write_str("-keepns")?;
        }
        Ok(())
    }
}

/// Parses `<base>[-<variant>][-<post>][-srm][-keepns]`. The seed is not
/// part of the string and is left at 0.
impl FromStr for HeuristicConfig {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut tokens = s.trim().split('-');
        let base = match tokens.next() {
            None | Some("") => return Err(ConfigError::Empty),
            Some("fix" | "plm" | "plmfix" | "plm_fix") => Base::PlmFix,
            Some("ccm") => Base::Ccm,
            Some("mim") => Base::Mim,
            Some(other) => return Err(ConfigError::UnknownBase(other.to_string())),
        };
        let mut cfg = HeuristicConfig::new(base);
        let mut stage = 0;
        for token in tokens {
            let unexpected = || ConfigError::Unexpected {
                token: token.to_string(),
                config: s.to_string(),
            };
            let post = match token {
                "none" => Some(Post::None),
                "all" => Some(Post::All),
                "inc" => Some(Post::Inc),
                _ => None,
            };
            if let (Some(variant), Base::Mim, 0) = (MimVariant::parse(token), base, stage) {
                cfg.mim_variant = variant;
                stage = 1;
            } else if let (Some(post), Base::PlmFix, 0) = (post, base, stage) {
                cfg.post = post;
                stage = 1;
            } else if token == "srm" && stage < 2 {
                cfg.srm = true;
                stage = 2;
            } else if token == "keepns" && stage < 3 {
                cfg.remove_nonsimple = false;
                stage = 3;
            } else {
                return Err(unexpected());
            }
        }
        Ok(cfg)
    }
}
