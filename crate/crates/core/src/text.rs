//! Line-based text format for programs.
//!
//! ```text
//! group-alphabet a b
//! A -> 'a' 'b'
//! B -> A ~A[1:] eps
//! root B
//! ```

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::program::{valid_name, Grammar, Item, NtId, Production, Program, Ref, Trunc};

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_index(s: &str, line: usize) -> Result<Option<BigInt>> {
    if s.is_empty() {
        return Ok(None);
    }
    s.parse::<BigInt>()
        .map(Some)
        .map_err(|_| perr(line, format!("bad index `{s}`")))
}

fn parse_item(
    tok: &str,
    alphabet: &Alphabet,
    ids: &HashMap<String, NtId>,
    line: usize,
) -> Result<Option<Item>> {
    if tok == "eps" {
        return Ok(None);
    }
    if let Some(inner) = tok.strip_prefix('\'') {
        let name = inner
            .strip_suffix('\'')
            .filter(|n| !n.is_empty())
            .ok_or_else(|| perr(line, format!("unterminated terminal `{tok}`")))?;
        return Ok(Some(Item::Letter(alphabet.lookup(name)?)));
    }
    let (inverted, rest) = match tok.strip_prefix('~') {
        Some(r) => (true, r),
        None => (false, tok),
    };
    let (name, trunc) = match rest.find('[') {
        None => (rest, None),
        Some(open) => {
            let body = rest[open + 1..]
                .strip_suffix(']')
                .ok_or_else(|| perr(line, format!("unterminated truncation `{tok}`")))?;
            let (lo, hi) = body
                .split_once(':')
                .ok_or_else(|| perr(line, format!("truncation needs `:` in `{tok}`")))?;
            let trunc = Trunc::new(parse_index(lo, line)?, parse_index(hi, line)?);
            (&rest[..open], Some(trunc))
        }
    };
    let target = *ids
        .get(name)
        .ok_or_else(|| perr(line, format!("`{name}` is not defined before use")))?;
    Ok(Some(Item::Ref(Ref {
        target,
        inverted,
        trunc,
    })))
}

/// Parse a grammar without validating it.
pub fn parse_grammar(text: &str) -> Result<Grammar> {
    let mut grammar: Option<Grammar> = None;
    let mut ids: HashMap<String, NtId> = HashMap::new();
    let mut root: Option<NtId> = None;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap().trim();
        if body.is_empty() {
            continue;
        }
        let mut toks = body.split_whitespace();
        let head = toks.next().unwrap();
        match head {
            "alphabet" | "group-alphabet" => {
                if grammar.is_some() {
                    return Err(perr(line, "alphabet declared twice"));
                }
                let names: Vec<&str> = toks.collect();
                let alphabet = if head == "alphabet" {
                    Alphabet::plain(names)?
                } else {
                    Alphabet::group(names)?
                };
                grammar = Some(Grammar::new(alphabet));
            }
            "root" => {
                let name = toks.next().ok_or_else(|| perr(line, "root needs a name"))?;
                if toks.next().is_some() {
                    return Err(perr(line, "trailing tokens after root"));
                }
                root = Some(
                    *ids.get(name)
                        .ok_or_else(|| perr(line, format!("unknown root `{name}`")))?,
                );
            }
            name => {
                let g = grammar
                    .as_mut()
                    .ok_or_else(|| perr(line, "production before alphabet declaration"))?;
                if toks.next() != Some("->") {
                    return Err(perr(line, "expected `NAME -> items`"));
                }
                if !valid_name(name) {
                    return Err(perr(line, format!("invalid non-terminal name `{name}`")));
                }
                if ids.contains_key(name) {
                    return Err(perr(line, format!("`{name}` defined twice")));
                }
                let mut items = Vec::new();
                for tok in toks {
                    if let Some(item) = parse_item(tok, &g.alphabet, &ids, line)? {
                        items.push(item);
                    }
                }
                let id = g.push(name, Production::Seq(items));
                ids.insert(name.to_string(), id);
            }
        }
    }
    let mut g = grammar.ok_or_else(|| perr(0, "missing alphabet declaration"))?;
    if g.productions.is_empty() {
        return Err(perr(0, "no productions"));
    }
    if let Some(r) = root {
        g.root = r;
    }
    Ok(g)
}

/// Parse and validate.
pub fn parse(text: &str) -> Result<Program> {
    Program::new(parse_grammar(text)?)
}

fn print_index(i: &Option<BigInt>) -> String {
    i.as_ref().map(ToString::to_string).unwrap_or_default()
}

pub fn print(p: &Program) -> String {
    let g = p.grammar();
    let mut out = format!("{}\n", g.alphabet);
    for (name, prod) in g.names.iter().zip(&g.productions) {
        let rhs = match prod {
            Production::Terminal(l) => format!("'{}'", g.alphabet.name(*l)),
            Production::Empty => "eps".to_string(),
            Production::Seq(items) => items
                .iter()
                .map(|it| match it {
                    Item::Letter(l) => format!("'{}'", g.alphabet.name(*l)),
                    Item::Ref(r) => {
                        let mut s = String::new();
                        if r.inverted {
                            s.push('~');
                        }
                        s.push_str(&g.names[r.target.0]);
                        if let Some(t) = &r.trunc {
                            s.push_str(&format!("[{}:{}]", print_index(&t.lo), print_index(&t.hi)));
                        }
                        s
                    }
                })
                .collect::<Vec<_>>()
                .join(" "),
        };
        out.push_str(&format!("{name} -> {rhs}\n"));
    }
    out.push_str(&format!("root {}\n", g.names[g.root.0]));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn round_trip_families() {
        for p in [
            families::fibonacci(9),
            families::truncated_doubling(8),
            families::iterated_automorphism(5),
        ] {
            assert_eq!(parse(&print(&p)).unwrap(), p);
        }
    }

    #[test]
    fn parses_all_item_forms() {
        let p = parse(
            "group-alphabet a b\n\
             # comment\n\
             A -> 'a' 'b' 'a''\n\
             B -> A[1:] ~A[:-1] A[-2:] eps\n\
             C -> eps\n\
             root B\n",
        )
        .unwrap();
        assert_eq!(p.len(), &num_bigint::BigUint::from(6u32));
        assert_eq!(p.production(NtId(2)), &Production::Empty);
        assert_eq!(parse(&print(&p)).unwrap(), p);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse("alphabet a\nA -> 'a'\nB -> C\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e:?}");
        assert!(parse("A -> 'a'\n").is_err());
        assert!(matches!(
            parse("alphabet a\nA -> 'z'\n"),
            Err(Error::UnknownLetter(_))
        ));
    }
}
