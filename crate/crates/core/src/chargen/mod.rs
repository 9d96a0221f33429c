//! Formulas characterising conflict-freeness, closure, defence,
//! admissibility and every kind of extension of an equivalence-equipped
//! Dung model, under the standard environment of [`std_interpretation`].

mod env;
mod family;
mod validate;

use thiserror::Error;

use crate::argue::Sigma;
use crate::syntax::{Formula, Term};

pub use env::{bind_constants, std_environment, std_interpretation, ANNO_EQ, ATTACK, DISTINCT};
pub use family::{Base, Family};
pub use validate::{cross_validate, CaseResult, FamilyReport, ValidateError, ValidateOptions};

/// Formulas grow exponentially in `N`; larger requests are refused.
pub const MAX_N: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("{family} expects {expected}, got {got}")]
    ArityMismatch {
        family: Family,
        expected: String,
        got: String,
    },
    #[error("N = {0} exceeds the generation limit of {MAX_N}")]
    TooLarge(usize),
    #[error("{family} needs k ≤ N, got k = {k}, N = {n}")]
    KExceedsN { family: Family, k: usize, n: usize },
}

/// `c1..ck`.
pub fn constant_names(k: usize) -> Vec<String> {
    (1..=k).map(|i| format!("c{i}")).collect()
}

/// The name of the extra constant denoting the node a defence formula is about.
pub const TARGET: &str = "t";

/// Builds formulas; bound variables are drawn from a counter so that nested
/// schema instances never capture each other's variables.
#[derive(Debug, Clone)]
pub struct Gen {
    n: usize,
    next: usize,
    mutant: bool,
}

fn pd(ts: &[Term]) -> Formula {
    Formula::atom(DISTINCT, ts.to_vec())
}

fn pa(a: &Term, b: &Term) -> Formula {
    Formula::atom(ATTACK, vec![a.clone(), b.clone()])
}

fn pa1(a: &Term) -> Formula {
    Formula::atom(ATTACK, vec![a.clone()])
}

fn eq(a: &Term, b: &Term) -> Formula {
    Formula::eq(a.clone(), b.clone())
}

fn ne(a: &Term, b: &Term) -> Formula {
    Formula::not(eq(a, b))
}

fn names(vs: &[Term]) -> Vec<String> {
    vs.iter()
        .map(|v| match v {
            Term::Var(x) => x.clone(),
            Term::Apply(..) => unreachable!("quantified terms are variables"),
        })
        .collect()
}

fn cat(a: &[Term], b: &[Term]) -> Vec<Term> {
    a.iter().chain(b).cloned().collect()
}

impl Gen {
    /// `n` is the `N` of the schemas: the node count of the intended model.
    pub fn new(n: usize) -> Self {
        Gen {
            n,
            next: 0,
            mutant: false,
        }
    }

    /// A deliberately broken generator whose membership tests `⋁ y = tᵢ`
    /// skip `t₁`; used to check that validation notices.
    pub fn mutant(n: usize) -> Self {
        Gen {
            mutant: true,
            ..Gen::new(n)
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn var(&mut self, base: &str) -> Term {
        self.next += 1;
        Term::Var(format!("{base}{}", self.next))
    }

    fn vars(&mut self, base: &str, count: usize) -> Vec<Term> {
        (0..count).map(|_| self.var(base)).collect()
    }

    /// `⋁ᵢ y = tᵢ`.
    fn member(&self, y: &Term, ts: &[Term]) -> Formula {
        let skip = usize::from(self.mutant && !ts.is_empty());
        Formula::or_all(ts[skip..].iter().map(|t| eq(y, t)))
    }

    /// `(¬a = b ∧ p_A(a, b)) ∨ (a = b ∧ p_A(a))`.
    fn attacks(a: &Term, b: &Term) -> Formula {
        Formula::or(
            Formula::and(ne(a, b), pa(a, b)),
            Formula::and(eq(a, b), pa1(a)),
        )
    }

    /// `k-CF(t1..tk)`: the `tᵢ` are distinct nodes with no attack among them.
    pub fn cf(&mut self, ts: &[Term]) -> Formula {
        if ts.is_empty() {
            return Formula::Top;
        }
        let (y1, y2) = (self.var("y"), self.var("y"));
        let guard = Formula::and_all([pd(&[y1.clone()]), pd(&[y2.clone()]), self.member(&y1, ts), self.member(&y2, ts)]);
        let body = Formula::or(
            Formula::and_all([ne(&y1, &y2), Formula::not(pa(&y1, &y2)), Formula::not(pa(&y2, &y1))]),
            Formula::and(eq(&y1, &y2), Formula::not(pa1(&y1))),
        );
        Formula::and(pd(ts), Formula::forall(names(&[y1, y2]), Formula::implies(guard, body)))
    }

    /// `kl-CL(t1..tl)`: `{t1..tl}` is the equivalence closure of `{t1..tk}`.
    pub fn cl(&mut self, k: usize, ts: &[Term]) -> Formula {
        let l = ts.len();
        if k == 0 && l == 0 {
            return Formula::Top;
        }
        if k == 0 || l < k {
            return Formula::Bottom;
        }
        let (z1, z2, z3) = (self.var("z"), self.var("z"), self.var("z"));
        let anno = |a: &Term, b: &Term, c: &Term| Formula::atom(ANNO_EQ, vec![a.clone(), b.clone(), c.clone()]);
        let closed = Formula::forall(
            names(&[z1.clone(), z2.clone()]),
            Formula::implies(
                Formula::and_all([
                    pd(&[z1.clone(), z2.clone()]),
                    self.member(&z1, &ts[..k]),
                    Formula::exists(names(&[z3.clone()]), anno(&z1, &z2, &z3)),
                ]),
                self.member(&z2, ts),
            ),
        );
        let (w1, w2, w3) = (self.var("z"), self.var("z"), self.var("z"));
        let reached = Formula::forall(
            names(&[w1.clone()]),
            Formula::implies(
                Formula::and(pd(&[w1.clone()]), self.member(&w1, &ts[k..])),
                Formula::exists(
                    names(&[w2.clone(), w3.clone()]),
                    Formula::and(self.member(&w2, &ts[..k]), anno(&w1, &w2, &w3)),
                ),
            ),
        );
        Formula::and_all([pd(ts), closed, reached])
    }

    /// `kN-WCF(t1..tk)`: no attack within the closure of `{t1..tk}`.
    pub fn wcf(&mut self, ts: &[Term]) -> Formula {
        let k = ts.len();
        if k == 0 {
            return Formula::Top;
        }
        let cf = self.cf(ts);
        let wide = (k + 1..=self.n)
            .map(|i| {
                let ys = self.vars("y", i - k);
                let all = cat(ts, &ys);
                let body = Formula::implies(self.cl(k, &all), self.cf(&all));
                Formula::forall(names(&ys), body)
            })
            .collect::<Vec<_>>();
        Formula::and(cf, Formula::and_all(wide))
    }

    /// `k-DF(t, t1..tk)`: `{t1..tk}` simple-defends `t`.
    pub fn df(&mut self, t: &Term, ts: &[Term]) -> Formula {
        let y = self.var("y");
        if ts.is_empty() {
            let body = Formula::implies(
                pd(&[y.clone()]),
                Formula::or(
                    Formula::and(ne(&y, t), Formula::not(pa(&y, t))),
                    Formula::and(eq(&y, t), Formula::not(pa1(&y))),
                ),
            );
            return Formula::and(pd(&[t.clone()]), Formula::forall(names(&[y]), body));
        }
        let x = self.var("x");
        let body = Formula::implies(
            Formula::and(pd(&[y.clone()]), Self::attacks(&y, t)),
            Formula::and_all([pd(&[x.clone()]), self.member(&x, ts), Self::attacks(&x, &y)]),
        );
        Formula::and_all([
            pd(&[t.clone()]),
            pd(ts),
            Formula::forall(names(&[y.clone()]), Formula::exists(names(&[x]), body)),
        ])
    }

    /// `kN-WDF(t, t1..tk)`: `{t1..tk}` simple-defends every node equivalent to `t`.
    pub fn wdf(&mut self, t: &Term, ts: &[Term]) -> Formula {
        let mut parts = vec![pd(&[t.clone()])];
        if !ts.is_empty() {
            parts.push(pd(ts));
        }
        for i in 1..=self.n {
            let ys = self.vars("y", i - 1);
            let yp = self.var("y");
            let class = self.cl(1, &cat(&[t.clone()], &ys));
            let inside = Formula::and(pd(&[yp.clone()]), Formula::or(eq(&yp, t), self.member(&yp, &ys)));
            let df = self.df(&yp, ts);
            let each = Formula::forall(names(&[yp]), Formula::implies(inside, df));
            parts.push(Formula::forall(names(&ys), Formula::implies(class, each)));
        }
        Formula::and_all(parts)
    }

    /// `k-ADM`: simple-admissible.
    pub fn adm(&mut self, ts: &[Term]) -> Formula {
        let cf = self.cf(ts);
        let dfs: Vec<Formula> = ts.iter().map(|t| self.df(t, ts)).collect();
        Formula::and(cf, Formula::and_all(dfs))
    }

    /// `kN-WADM`: wide-admissible.
    pub fn wadm(&mut self, ts: &[Term]) -> Formula {
        let cf = self.wcf(ts);
        let dfs: Vec<Formula> = ts.iter().map(|t| self.wdf(t, ts)).collect();
        Formula::and(cf, Formula::and_all(dfs))
    }

    pub fn d_cmp(&mut self, ts: &[Term]) -> Formula {
        let adm = self.adm(ts);
        let x = self.var("x");
        let closed = Formula::implies(self.df(&x, ts), self.member(&x, ts));
        Formula::and(adm, Formula::forall(names(&[x]), closed))
    }

    pub fn w_d_cmp(&mut self, ts: &[Term]) -> Formula {
        let adm = self.wadm(ts);
        let x = self.var("x");
        let closed = Formula::implies(self.wdf(&x, ts), self.member(&x, ts));
        Formula::and(adm, Formula::forall(names(&[x]), closed))
    }

    pub fn e_cmp(&mut self, ts: &[Term]) -> Formula {
        let adm = self.adm(ts);
        Formula::and(adm, self.cl(ts.len(), ts))
    }

    /// The complete-extension formula for a base.
    pub fn complete(&mut self, base: Base, ts: &[Term]) -> Formula {
        match base {
            Base::D => self.d_cmp(ts),
            Base::WD => self.w_d_cmp(ts),
            Base::E => self.e_cmp(ts),
            Base::Both(Sigma::Simple) => Formula::and(self.d_cmp(ts), self.e_cmp(ts)),
            Base::Both(Sigma::Wide) => Formula::and(self.w_d_cmp(ts), self.e_cmp(ts)),
        }
    }

    /// Complete, and no strictly larger complete set exists.
    pub fn preferred(&mut self, base: Base, ts: &[Term]) -> Formula {
        let k = ts.len();
        let cmp = self.complete(base, ts);
        let larger = (k + 1..=self.n)
            .map(|m| {
                let xs = self.vars("x", self.n + 1 - m);
                Formula::not(Formula::exists(names(&xs), self.complete(base, &cat(ts, &xs))))
            })
            .collect::<Vec<_>>();
        Formula::and(cmp, Formula::and_all(larger))
    }

    /// Complete, and no strictly smaller complete subset exists.
    pub fn grounded(&mut self, base: Base, ts: &[Term]) -> Formula {
        let k = ts.len();
        let cmp = self.complete(base, ts);
        let smaller = (0..k)
            .map(|m| {
                let xs = self.vars("x", m);
                let within = Formula::and_all(
                    xs.iter()
                        .map(|x| Formula::or_all(ts.iter().map(|c| eq(c, x))))
                        .collect::<Vec<_>>(),
                );
                let inner = Formula::and(within, self.complete(base, &xs));
                Formula::not(Formula::exists(names(&xs), inner))
            })
            .collect::<Vec<_>>();
        Formula::and(cmp, Formula::and_all(smaller))
    }

    /// Complete, and attacks every node outside.
    pub fn stable(&mut self, base: Base, ts: &[Term]) -> Formula {
        let cmp = self.complete(base, ts);
        let (z, x) = (self.var("z"), self.var("x"));
        let outside = Formula::and(pd(&[z.clone()]), Formula::and_all(ts.iter().map(|t| ne(&z, t)).collect::<Vec<_>>()));
        let hit = Formula::exists(names(&[x.clone()]), Formula::and(self.member(&x, ts), pa(&x, &z)));
        Formula::and(cmp, Formula::forall(names(&[z]), Formula::implies(outside, hit)))
    }

    /// `k1k2-DISTINCT`: both tuples are distinct nodes and differ as sets.
    pub fn distinct(&mut self, a: &[Term], b: &[Term]) -> Formula {
        match (a.len(), b.len()) {
            (0, 0) => return Formula::Bottom,
            (0, _) => return pd(b),
            (_, 0) => return pd(a),
            _ => {}
        }
        let w1 = self.var("w");
        let only = |this: &[Term], other: &[Term], g: &mut Gen| {
            let w2 = g.var("w");
            Formula::and(
                g.member(&w1, this),
                Formula::forall(
                    names(&[w2.clone()]),
                    Formula::implies(Formula::and(pd(&[w2.clone()]), g.member(&w2, other)), ne(&w1, &w2)),
                ),
            )
        };
        let left = only(a, b, self);
        let right = only(b, a, self);
        Formula::and_all([
            pd(a),
            pd(b),
            Formula::exists(names(&[w1.clone()]), Formula::and(pd(&[w1]), Formula::or(left, right))),
        ])
    }

    /// `k1..km N-W-D-CMPS`: the blocks are exactly the wide
    /// defence-complete extensions.
    pub fn cmps(&mut self, blocks: &[Vec<Term>]) -> Formula {
        let mut pairwise = Vec::new();
        for (j1, a) in blocks.iter().enumerate() {
            for b in &blocks[j1 + 1..] {
                pairwise.push(self.distinct(a, b));
            }
        }
        let each: Vec<Formula> = blocks.iter().map(|b| self.w_d_cmp(b)).collect();
        let listed = (0..=self.n)
            .map(|j| {
                let vs = self.vars("v", j);
                let cmp = self.w_d_cmp(&vs);
                let some = Formula::or_all(
                    blocks
                        .iter()
                        .map(|b| Formula::not(self.distinct(&vs, b)))
                        .collect::<Vec<_>>(),
                );
                Formula::forall(names(&vs), Formula::implies(cmp, some))
            })
            .collect::<Vec<_>>();
        Formula::and_all([
            Formula::and_all(pairwise),
            Formula::and_all(each),
            Formula::and_all(listed),
        ])
    }
}

/// What to generate. Depending on the family, `constants` is split:
/// `DF`/`WDF` take the target node first; `CL` takes `split = [k]` with
/// `l = constants.len()`; `DISTINCT` takes `split = [k1, k2]`; `CMPS` takes
/// the block sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaRequest {
    pub family: Family,
    pub n: usize,
    pub constants: Vec<String>,
    pub split: Vec<usize>,
    pub mutant: bool,
}

impl FormulaRequest {
    pub fn new(family: Family, n: usize, constants: Vec<String>) -> Self {
        FormulaRequest {
            family,
            n,
            constants,
            split: Vec::new(),
            mutant: false,
        }
    }

    pub fn with_split(mut self, split: Vec<usize>) -> Self {
        self.split = split;
        self
    }
}

pub fn generate(req: &FormulaRequest) -> Result<Formula, GenError> {
    let family = req.family;
    if req.n > MAX_N {
        return Err(GenError::TooLarge(req.n));
    }
    let ts: Vec<Term> = req.constants.iter().map(Term::constant).collect();
    let mismatch = |expected: &str| GenError::ArityMismatch {
        family,
        expected: expected.to_string(),
        got: format!("{} constants, split {:?}", ts.len(), req.split),
    };
    let within_n = |k: usize| {
        if k > req.n {
            Err(GenError::KExceedsN { family, k, n: req.n })
        } else {
            Ok(())
        }
    };
    let mut g = if req.mutant {
        Gen::mutant(req.n)
    } else {
        Gen::new(req.n)
    };
    let split_at = |parts: &[usize]| -> Vec<Vec<Term>> {
        let mut rest = &ts[..];
        parts
            .iter()
            .map(|&k| {
                let (a, b) = rest.split_at(k);
                rest = b;
                a.to_vec()
            })
            .collect()
    };
    let plain = |expected: &str| {
        if req.split.is_empty() {
            Ok(())
        } else {
            Err(mismatch(expected))
        }
    };
    Ok(match family {
        Family::Cl => {
            let [k] = req.split[..] else {
                return Err(mismatch("split = [k]"));
            };
            g.cl(k, &ts)
        }
        Family::Df | Family::Wdf => {
            plain("a target constant followed by k constants")?;
            let Some((t, rest)) = ts.split_first() else {
                return Err(mismatch("a target constant followed by k constants"));
            };
            within_n(rest.len())?;
            if family == Family::Df {
                g.df(t, rest)
            } else {
                g.wdf(t, rest)
            }
        }
        Family::Distinct => {
            if req.split.len() != 2 || req.split.iter().sum::<usize>() != ts.len() {
                return Err(mismatch("split = [k1, k2] summing to the constant count"));
            }
            let parts = split_at(&req.split);
            g.distinct(&parts[0], &parts[1])
        }
        Family::Cmps => {
            if req.split.iter().sum::<usize>() != ts.len() {
                return Err(mismatch("block sizes summing to the constant count"));
            }
            for &k in &req.split {
                within_n(k)?;
            }
            g.cmps(&split_at(&req.split))
        }
        _ => {
            plain("k constants and no split")?;
            within_n(ts.len())?;
            match family {
                Family::Cf => g.cf(&ts),
                Family::Wcf => g.wcf(&ts),
                Family::Adm => g.adm(&ts),
                Family::Wadm => g.wadm(&ts),
                Family::Complete(b) => g.complete(b, &ts),
                Family::Preferred(b) => g.preferred(b, &ts),
                Family::Grounded(b) => g.grounded(b, &ts),
                Family::Stable(b) => g.stable(b, &ts),
                Family::Cl | Family::Df | Family::Wdf | Family::Distinct | Family::Cmps => unreachable!(),
            }
        }
    })
}

#[cfg(test)]
mod tests;
