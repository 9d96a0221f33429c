use std::fmt;
use std::str::FromStr;

use crate::argue::{ExtensionSpec, Mu, Sigma, Tau};

/// Which complete-extension formula the preferred/grounded/stable schemas
/// are built over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Base {
    /// Simple defence-complete.
    D,
    /// Wide defence-complete.
    WD,
    /// Equivalence-complete (simple and wide coincide).
    E,
    /// Closed under σ-defence and equivalence.
    Both(Sigma),
}

impl Base {
    pub fn of(sigma: Sigma, tau: Tau) -> Base {
        match (sigma, tau) {
            (Sigma::Simple, Tau::Defence) => Base::D,
            (Sigma::Wide, Tau::Defence) => Base::WD,
            (_, Tau::Equivalence) => Base::E,
            (s, Tau::Both) => Base::Both(s),
        }
    }

    fn spec(self, mu: Mu) -> ExtensionSpec {
        match self {
            Base::D => ExtensionSpec::new(Sigma::Simple, Tau::Defence, mu),
            Base::WD => ExtensionSpec::new(Sigma::Wide, Tau::Defence, mu),
            Base::E => ExtensionSpec::new(Sigma::Simple, Tau::Equivalence, mu),
            Base::Both(s) => ExtensionSpec::new(s, Tau::Both, mu),
        }
    }

    fn prefix(self) -> &'static str {
        match self {
            Base::D => "D",
            Base::WD => "W-D",
            Base::E => "E",
            Base::Both(Sigma::Simple) => "S",
            Base::Both(Sigma::Wide) => "W",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Cf,
    Cl,
    Wcf,
    Df,
    Wdf,
    Adm,
    Wadm,
    Complete(Base),
    Preferred(Base),
    Grounded(Base),
    Stable(Base),
    Distinct,
    Cmps,
}

impl Family {
    /// The building blocks characterising properties of sets and nodes.
    pub const LEMMAS: [Family; 5] = [Family::Cf, Family::Cl, Family::Wcf, Family::Df, Family::Wdf];

    /// The twelve extension characterisations: complete, preferred,
    /// grounded and stable, each over simple defence, wide defence and
    /// equivalence.
    pub fn extensions() -> Vec<Family> {
        let mut out = Vec::new();
        for f in [Family::Complete, Family::Preferred, Family::Grounded, Family::Stable] {
            for b in [Base::D, Base::WD, Base::E] {
                out.push(f(b));
            }
        }
        out
    }

    /// Every family that can be cross-validated against a semantic oracle.
    pub fn all() -> Vec<Family> {
        let mut out = Family::LEMMAS.to_vec();
        out.extend([Family::Adm, Family::Wadm]);
        out.extend(Family::extensions());
        for f in [Family::Complete, Family::Preferred, Family::Grounded, Family::Stable] {
            for s in [Sigma::Simple, Sigma::Wide] {
                out.push(f(Base::Both(s)));
            }
        }
        out.extend([Family::Distinct, Family::Cmps]);
        out
    }

    pub fn from_spec(spec: ExtensionSpec) -> Family {
        let base = Base::of(spec.sigma, spec.tau);
        match spec.mu {
            Mu::Admissible => match spec.sigma {
                Sigma::Simple => Family::Adm,
                Sigma::Wide => Family::Wadm,
            },
            Mu::Complete => Family::Complete(base),
            Mu::Preferred => Family::Preferred(base),
            Mu::Grounded => Family::Grounded(base),
            Mu::Stable => Family::Stable(base),
        }
    }

    /// The extension kind a set-level family characterises.
    pub fn spec(self) -> Option<ExtensionSpec> {
        Some(match self {
            Family::Adm => ExtensionSpec::new(Sigma::Simple, Tau::Defence, Mu::Admissible),
            Family::Wadm => ExtensionSpec::new(Sigma::Wide, Tau::Defence, Mu::Admissible),
            Family::Complete(b) => b.spec(Mu::Complete),
            Family::Preferred(b) => b.spec(Mu::Preferred),
            Family::Grounded(b) => b.spec(Mu::Grounded),
            Family::Stable(b) => b.spec(Mu::Stable),
            _ => return None,
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Cf => f.write_str("CF"),
            Family::Cl => f.write_str("CL"),
            Family::Wcf => f.write_str("WCF"),
            Family::Df => f.write_str("DF"),
            Family::Wdf => f.write_str("WDF"),
            Family::Adm => f.write_str("ADM"),
            Family::Wadm => f.write_str("WADM"),
            Family::Complete(b) => write!(f, "{}-CMP", b.prefix()),
            Family::Preferred(b) => write!(f, "{}-PREF", b.prefix()),
            Family::Grounded(b) => write!(f, "{}-GRD", b.prefix()),
            Family::Stable(b) => write!(f, "{}-STB", b.prefix()),
            Family::Distinct => f.write_str("DISTINCT"),
            Family::Cmps => f.write_str("CMPS"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown formula family `{0}`")]
pub struct UnknownFamily(pub String);

impl FromStr for Family {
    type Err = UnknownFamily;

    /// Family names as displayed (`W-D-CMP`, `E-PREF`, …), case-insensitive,
    /// or an extension spec `sigma:tau:mu`.
    fn from_str(s: &str) -> Result<Self, UnknownFamily> {
        if s.contains(':') {
            return s
                .parse::<ExtensionSpec>()
                .map(Family::from_spec)
                .map_err(|_| UnknownFamily(s.to_string()));
        }
        let upper = s.trim().to_ascii_uppercase();
        Family::all()
            .into_iter()
            .find(|f| f.to_string() == upper)
            .ok_or_else(|| UnknownFamily(s.to_string()))
    }
}
