//! Built-in operads and an expression resolver over them.
//!
//! Textual entries are parsed from their defining identities. Derived entries
//! are built from recipes on first use and cached for the process.
//!
//! Expressions: a catalog name, `dual(E)` or `E!`, `white(E, F)`,
//! `black(E, F)`, `di(E)`, `tri(E)`, `pre(E)`, `post(E)`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::free3::GeneratorSpace;
use crate::koszul::dual_operad;
use crate::linalg::MatrixQ;
use crate::manin::{black_product, replicate_with, split, white_product, Replication, SplitMode};
use crate::operad::{make_operad, Provenance, QuadOperad};

pub const TEXTUAL: [&str; 10] = ["Com", "Lie", "As", "Pois", "Nov", "NP", "GD", "Alt", "Perm", "Zinb"];
pub const DERIVED: [&str; 7] = ["Leib", "preLie", "diAs", "preAs", "diNov", "postLie", "ComTriAs"];

pub fn catalog_names() -> Vec<&'static str> {
    TEXTUAL.iter().chain(DERIVED.iter()).copied().collect()
}

fn gens(spec: &[(&str, Sym)]) -> GeneratorSpace {
    let d = spec.len();
    let mut swap = MatrixQ::zeros(d, d);
    for (j, (_, s)) in spec.iter().enumerate() {
        match s {
            Sym::Plain => swap[(j, j)] = crate::linalg::q(1),
            Sym::Anti => swap[(j, j)] = crate::linalg::q(-1),
            Sym::Pair(other) => {
                let k = spec.iter().position(|(n, _)| n == other).expect("pair partner");
                swap[(k, j)] = crate::linalg::q(1);
            }
        }
    }
    GeneratorSpace::new(spec.iter().map(|(n, _)| n.to_string()).collect(), swap).expect("catalog generators")
}

enum Sym {
    Plain,
    Anti,
    Pair(&'static str),
}

const ASSOC_M: &str = "(x1 {m} x2) {m} x3 - x1 {m} (x2 {m} x3)";
const ASSOC_C: &str = "(x1 {c} x2) {c} x3 - x1 {c} (x2 {c} x3)";
const JACOBI_B: &str = "(x1 {b} x2) {b} x3 + (x2 {b} x3) {b} x1 + (x3 {b} x1) {b} x2";
const LEFT_SYM: &str = "(x1 {g1} x2) {g1} x3 - x1 {g1} (x2 {g1} x3) - (x2 {g1} x1) {g1} x3 + x2 {g1} (x1 {g1} x3)";
const RIGHT_COM: &str = "(x1 {g1} x2) {g1} x3 - (x1 {g1} x3) {g1} x2";

/// Generator layout and defining identities of a textual entry.
pub fn textual_source(name: &str) -> Option<(GeneratorSpace, Vec<&'static str>)> {
    use Sym::*;
    let ops = || gens(&[("m", Pair("m_op")), ("m_op", Pair("m"))]);
    let nov = || gens(&[("g1", Pair("g2")), ("g2", Pair("g1"))]);
    Some(match name {
        "Com" => (gens(&[("c", Plain)]), vec![ASSOC_C]),
        "Lie" => (gens(&[("b", Anti)]), vec![JACOBI_B]),
        "As" => (ops(), vec![ASSOC_M]),
        "Pois" => (
            gens(&[("c", Plain), ("b", Anti)]),
            vec![ASSOC_C, JACOBI_B, "(x1 {c} x2) {b} x3 - (x1 {b} x3) {c} x2 - x1 {c} (x2 {b} x3)"],
        ),
        "Nov" => (nov(), vec![LEFT_SYM, RIGHT_COM]),
        "NP" => (
            gens(&[("e1", Plain), ("g1", Pair("g2")), ("g2", Pair("g1"))]),
            vec![
                "(x1 {e1} x2) {e1} x3 - x1 {e1} (x2 {e1} x3)",
                LEFT_SYM,
                RIGHT_COM,
                "(x1 {e1} x2) {g1} x3 - (x2 {g1} x3) {e1} x1",
                "(x1 {g1} x2) {e1} x3 - x1 {g1} (x3 {e1} x2) - (x2 {g1} x1) {e1} x3 + x2 {g1} (x1 {e1} x3)",
            ],
        ),
        "GD" => (
            gens(&[("g1", Pair("g2")), ("g2", Pair("g1")), ("e2", Anti)]),
            vec![
                "(x1 {e2} x2) {e2} x3 + (x2 {e2} x3) {e2} x1 + (x3 {e2} x1) {e2} x2",
                LEFT_SYM,
                RIGHT_COM,
                "(x1 {g1} x2) {e2} x3 - (x1 {g1} x3) {e2} x2 + (x1 {e2} x2) {g1} x3 - (x1 {e2} x3) {g1} x2 \
                 + x1 {g1} (x3 {e2} x2)",
            ],
        ),
        "Alt" => (
            ops(),
            vec![
                "(x1 {m} x2) {m} x3 - x1 {m} (x2 {m} x3) + (x2 {m} x1) {m} x3 - x2 {m} (x1 {m} x3)",
                "(x1 {m} x2) {m} x3 - x1 {m} (x2 {m} x3) + (x1 {m} x3) {m} x2 - x1 {m} (x3 {m} x2)",
            ],
        ),
        "Perm" => (ops(), vec![ASSOC_M, "(x1 {m} x2) {m} x3 - (x2 {m} x1) {m} x3"]),
        "Zinb" => (ops(), vec!["(x1 {m} x2) {m} x3 - x1 {m} (x2 {m} x3) - x1 {m} (x3 {m} x2)"]),
        _ => return None,
    })
}

/// Recipe expression of a derived entry.
pub fn derived_recipe(name: &str) -> Option<&'static str> {
    Some(match name {
        "Leib" => "white(Perm, Lie)",
        "preLie" => "dual(Perm)",
        "diAs" => "white(Perm, As)",
        "preAs" => "dual(diAs)",
        "diNov" => "white(Perm, Nov)",
        "postLie" => "post(Lie)",
        "ComTriAs" => "dual(postLie)",
        _ => return None,
    })
}

/// Readable generator names for derived entries whose operations have
/// customary symbols. diAs: `x1 ⊢ x2` keeps the right argument, `x1 ⊣ x2`
/// the left one.
fn derived_generator_names(name: &str) -> Option<Vec<String>> {
    let names: &[&str] = match name {
        // white(Perm, As) order: m*m, m*m_op, m_op*m, m_op*m_op
        "diAs" => &["vdash", "dashv_op", "dashv", "vdash_op"],
        _ => return None,
    };
    Some(names.iter().map(|s| s.to_string()).collect())
}

type Cache = RwLock<HashMap<String, Arc<QuadOperad>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn build_entry(name: &str) -> Result<QuadOperad> {
    if let Some((g, texts)) = textual_source(name) {
        return make_operad(name, g, &texts);
    }
    let recipe = derived_recipe(name).ok_or_else(|| Error::UnknownOperad(name.to_string()))?;
    let mut op = resolve(recipe)?.as_ref().clone();
    if let Some(names) = derived_generator_names(name) {
        op = op.with_generator_names(names)?;
    }
    Ok(op.with_name(name).with_provenance(Provenance::Derived(recipe.to_string())))
}

/// A catalog entry by name.
pub fn catalog(name: &str) -> Result<Arc<QuadOperad>> {
    if let Some(hit) = cache().read().expect("catalog cache poisoned").get(name) {
        return Ok(hit.clone());
    }
    // concurrent first calls may both build; the first insert wins
    let built = Arc::new(build_entry(name)?);
    let mut w = cache().write().expect("catalog cache poisoned");
    Ok(w.entry(name.to_string()).or_insert(built).clone())
}

/// Evaluate an operad expression.
pub fn resolve(expr: &str) -> Result<Arc<QuadOperad>> {
    let toks = tokenize(expr)?;
    let mut pos = 0;
    let out = parse_expr(&toks, &mut pos, expr)?;
    if pos != toks.len() {
        return Err(Error::Parse(format!("trailing input in operad expression `{expr}`")));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Open,
    Close,
    Comma,
    Bang,
}

fn tokenize(expr: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let mut chars = expr.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '(' | ')' | ',' | '!' => {
                chars.next();
                out.push(match c {
                    '(' => Tok::Open,
                    ')' => Tok::Close,
                    ',' => Tok::Comma,
                    _ => Tok::Bang,
                });
            }
            c if c.is_alphanumeric() || c == '_' => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_alphanumeric() || c == '_' {
                        s.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Ident(s));
            }
            _ => return Err(Error::Parse(format!("unexpected `{c}` in operad expression `{expr}`"))),
        }
    }
    Ok(out)
}

fn parse_expr(toks: &[Tok], pos: &mut usize, expr: &str) -> Result<Arc<QuadOperad>> {
    let bad = || Error::Parse(format!("malformed operad expression `{expr}`"));
    let name = match toks.get(*pos) {
        Some(Tok::Ident(s)) => s.clone(),
        _ => return Err(bad()),
    };
    *pos += 1;
    let mut value = if toks.get(*pos) == Some(&Tok::Open) {
        *pos += 1;
        let mut args = vec![parse_expr(toks, pos, expr)?];
        while toks.get(*pos) == Some(&Tok::Comma) {
            *pos += 1;
            args.push(parse_expr(toks, pos, expr)?);
        }
        if toks.get(*pos) != Some(&Tok::Close) {
            return Err(bad());
        }
        *pos += 1;
        apply(&name, &args, expr)?
    } else {
        catalog(&name)?
    };
    while toks.get(*pos) == Some(&Tok::Bang) {
        *pos += 1;
        value = Arc::new(dual_operad(&value)?);
    }
    Ok(value)
}

fn apply(func: &str, args: &[Arc<QuadOperad>], expr: &str) -> Result<Arc<QuadOperad>> {
    let arity = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(Error::Parse(format!("`{func}` takes {n} argument(s) in `{expr}`")))
        }
    };
    let out = match func {
        "dual" => {
            arity(1)?;
            dual_operad(&args[0])?
        }
        "white" => {
            arity(2)?;
            white_product(&args[0], &args[1])?
        }
        "black" => {
            arity(2)?;
            black_product(&args[0], &args[1])?
        }
        "di" => {
            arity(1)?;
            replicate(&args[0], Replication::Di)?
        }
        "tri" => {
            arity(1)?;
            replicate(&args[0], Replication::Tri)?
        }
        "pre" => {
            arity(1)?;
            split(&args[0], SplitMode::Pre)?
        }
        "post" => {
            arity(1)?;
            split(&args[0], SplitMode::Post)?
        }
        _ => return Err(Error::UnknownOperad(format!("{func}(...)"))),
    };
    Ok(Arc::new(out))
}

/// `di(P)` or `tri(P)` with the catalog partner.
pub fn replicate(p: &QuadOperad, mode: Replication) -> Result<QuadOperad> {
    let partner = match mode {
        Replication::Di => catalog("Perm")?,
        Replication::Tri => catalog("ComTriAs")?,
    };
    replicate_with(&partner, p, mode)
}
