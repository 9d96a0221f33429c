//! Canonical ASCII printer; `parse_formula` inverts it.

use std::fmt::{self, Display, Formatter, Write};

use super::{Formula, Term};

impl Display for Term {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Apply(name, args) => {
                f.write_str(name)?;
                f.write_char('(')?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_char(')')
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Ctx {
    Top,
    ImplLeft,
    ImplRight,
    JuncLeft(bool),
    JuncRight,
    NotArg,
    QuantBody,
}

fn needs_parens(f: &Formula, ctx: Ctx) -> bool {
    match f {
        Formula::Implies(..) => !matches!(ctx, Ctx::Top | Ctx::ImplRight),
        Formula::Forall(..) | Formula::Exists(..) => {
            matches!(ctx, Ctx::JuncLeft(_) | Ctx::JuncRight | Ctx::NotArg)
        }
        Formula::And(..) | Formula::Or(..) => {
            let is_and = matches!(f, Formula::And(..));
            match ctx {
                Ctx::JuncRight | Ctx::NotArg => true,
                Ctx::JuncLeft(parent_and) => parent_and != is_and,
                _ => false,
            }
        }
        Formula::Eq(..) => ctx == Ctx::NotArg,
        _ => false,
    }
}

fn write_formula(out: &mut Formatter<'_>, f: &Formula, ctx: Ctx) -> fmt::Result {
    let parens = needs_parens(f, ctx);
    if parens {
        out.write_char('(')?;
    }
    match f {
        Formula::Atom(p, args) if args.is_empty() => out.write_str(p)?,
        Formula::Atom(p, args) => write!(out, "{}", Term::Apply(p.clone(), args.clone()))?,
        Formula::Eq(a, b) => write!(out, "{a} = {b}")?,
        Formula::Top => out.write_str("true")?,
        Formula::Bottom => out.write_str("false")?,
        Formula::Not(g) => {
            out.write_char('~')?;
            write_formula(out, g, Ctx::NotArg)?;
        }
        Formula::And(a, b) | Formula::Or(a, b) => {
            let is_and = matches!(f, Formula::And(..));
            write_formula(out, a, Ctx::JuncLeft(is_and))?;
            out.write_str(if is_and { " & " } else { " | " })?;
            write_formula(out, b, Ctx::JuncRight)?;
        }
        Formula::Implies(a, b) => {
            write_formula(out, a, Ctx::ImplLeft)?;
            out.write_str(" -> ")?;
            write_formula(out, b, Ctx::ImplRight)?;
        }
        Formula::Forall(v, g) | Formula::Exists(v, g) => {
            let q = if matches!(f, Formula::Forall(..)) {
                "forall"
            } else {
                "exists"
            };
            write!(out, "{q} {v}. ")?;
            write_formula(out, g, Ctx::QuantBody)?;
        }
    }
    if parens {
        out.write_char(')')?;
    }
    Ok(())
}

impl Display for Formula {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_formula(f, self, Ctx::Top)
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse_formula;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_forms() {
        for (src, want) in [
            ("~p(a()) & q(b())", "~p(a()) & q(b())"),
            ("forall x. p(x) -> q(x)", "forall x. p(x) -> q(x)"),
            ("forall x. (p(x) -> q(x))", "forall x. (p(x) -> q(x))"),
            ("(a -> b) -> c", "(a -> b) -> c"),
            ("a -> b -> c", "a -> b -> c"),
            ("a & (b & c)", "a & (b & c)"),
            ("(a | b) & c", "(a | b) & c"),
            ("a & (exists x. p(x)) & c", "a & (exists x. p(x)) & c"),
            ("~(x = y)", "~(x = y)"),
            ("~(forall x. p(x))", "~(forall x. p(x))"),
        ] {
            let f = parse_formula(src).unwrap();
            assert_eq!(f.to_string(), want, "from {src}");
            assert_eq!(parse_formula(want).unwrap(), f);
        }
    }

    fn ident() -> impl Strategy<Value = String> {
        prop::sample::select(vec!["x", "y", "z1", "p", "q_A", "c"]).prop_map(str::to_string)
    }

    fn term() -> impl Strategy<Value = Term> {
        let leaf = prop_oneof![
            ident().prop_map(Term::Var),
            ident().prop_map(Term::constant),
        ];
        leaf.prop_recursive(2, 6, 3, |inner| {
            (ident(), prop::collection::vec(inner, 1..3)).prop_map(|(f, a)| Term::Apply(f, a))
        })
    }

    pub(crate) fn formula() -> impl Strategy<Value = Formula> {
        let leaf = prop_oneof![
            Just(Formula::Top),
            Just(Formula::Bottom),
            (ident(), prop::collection::vec(term(), 0..3)).prop_map(|(p, a)| Formula::Atom(p, a)),
            (term(), term()).prop_map(|(a, b)| Formula::Eq(a, b)),
        ];
        leaf.prop_recursive(5, 40, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Formula::not),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
                (ident(), inner.clone()).prop_map(|(v, b)| Formula::Forall(v, Box::new(b))),
                (ident(), inner).prop_map(|(v, b)| Formula::Exists(v, Box::new(b))),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_then_parse_is_identity(f in formula()) {
            let text = f.to_string();
            prop_assert_eq!(parse_formula(&text).unwrap(), f, "{}", text);
        }
    }
}
