use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sigma {
    Simple,
    Wide,
}

/// Which closure a complete extension must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tau {
    Defence,
    Equivalence,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mu {
    Admissible,
    Complete,
    Preferred,
    Grounded,
    Stable,
}

/// `sigma:tau:mu`, e.g. `wide:defence:complete`. `tau` is irrelevant for
/// admissible sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtensionSpec {
    pub sigma: Sigma,
    pub tau: Tau,
    pub mu: Mu,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bad extension spec `{0}`: expected sigma:tau:mu with sigma in simple|wide, tau in defence|equivalence|both, mu in admissible|complete|preferred|grounded|stable")]
pub struct SpecError(pub String);

impl ExtensionSpec {
    pub const fn new(sigma: Sigma, tau: Tau, mu: Mu) -> Self {
        ExtensionSpec { sigma, tau, mu }
    }

    /// Every spec with a distinct meaning: admissible once per σ, the rest
    /// for every τ.
    pub fn all() -> Vec<ExtensionSpec> {
        let mut out = Vec::new();
        for sigma in [Sigma::Simple, Sigma::Wide] {
            out.push(ExtensionSpec::new(sigma, Tau::Defence, Mu::Admissible));
            for mu in [Mu::Complete, Mu::Preferred, Mu::Grounded, Mu::Stable] {
                for tau in [Tau::Defence, Tau::Equivalence, Tau::Both] {
                    out.push(ExtensionSpec::new(sigma, tau, mu));
                }
            }
        }
        out
    }
}

impl fmt::Display for Sigma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sigma::Simple => "simple",
            Sigma::Wide => "wide",
        })
    }
}

impl fmt::Display for Tau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tau::Defence => "defence",
            Tau::Equivalence => "equivalence",
            Tau::Both => "both",
        })
    }
}

impl fmt::Display for Mu {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mu::Admissible => "admissible",
            Mu::Complete => "complete",
            Mu::Preferred => "preferred",
            Mu::Grounded => "grounded",
            Mu::Stable => "stable",
        })
    }
}

impl fmt::Display for ExtensionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.sigma, self.tau, self.mu)
    }
}

impl FromStr for ExtensionSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, SpecError> {
        let err = || SpecError(s.to_string());
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        let [sigma, tau, mu] = parts[..] else {
            return Err(err());
        };
        let sigma = match sigma {
            "simple" => Sigma::Simple,
            "wide" => Sigma::Wide,
            _ => return Err(err()),
        };
        let tau = match tau {
            "defence" | "defense" => Tau::Defence,
            "equivalence" => Tau::Equivalence,
            "both" => Tau::Both,
            _ => return Err(err()),
        };
        let mu = match mu {
            "admissible" => Mu::Admissible,
            "complete" => Mu::Complete,
            "preferred" => Mu::Preferred,
            "grounded" => Mu::Grounded,
            "stable" => Mu::Stable,
            _ => return Err(err()),
        };
        Ok(ExtensionSpec { sigma, tau, mu })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let s: ExtensionSpec = "wide:defence:complete".parse().unwrap();
        assert_eq!(s, ExtensionSpec::new(Sigma::Wide, Tau::Defence, Mu::Complete));
        assert_eq!(s.to_string(), "wide:defence:complete");
        assert_eq!("simple:defense:stable".parse::<ExtensionSpec>().unwrap().tau, Tau::Defence);
        for bad in ["", "wide", "wide:defence", "narrow:defence:complete", "wide:both:ideal", "a:b:c:d"] {
            assert!(bad.parse::<ExtensionSpec>().is_err(), "{bad}");
        }
        assert_eq!(ExtensionSpec::all().len(), 2 * (1 + 4 * 3));
    }
}
