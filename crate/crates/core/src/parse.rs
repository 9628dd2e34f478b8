//! Text format for programs.
//!
//! ```text
//! % comment
//! waves.                       fact
//! ~working <- vacation.        strict rule
//! [d1] nice -< waves.          labelled defeasible rule
//! rain -< .                    presumption
//! #prio d1 3
//! #prefer {d2, d3} > {d1}
//! #ordering lastlink
//! ```

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::program::{Literal, OrderingMode, Preference, Program, ProgramError, RuleKind};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Directive(String),
    Tilde,
    StrictArrow,
    DefArrow,
    Dot,
    Comma,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Gt,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(i) => format!("`{i}`"),
            Tok::Directive(d) => format!("`#{d}`"),
            Tok::Tilde => "`~`".into(),
            Tok::StrictArrow => "`<-`".into(),
            Tok::DefArrow => "`-<`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Comma => "`,`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Gt => "`>`".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ProgramError {
    ProgramError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Spanned>, ProgramError> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let column = i + 1;
            let push = |out: &mut Vec<Spanned>, tok| {
                out.push(Spanned {
                    tok,
                    line: line_no,
                    column,
                })
            };
            match c {
                '%' => break,
                c if c.is_whitespace() => i += 1,
                '~' => {
                    push(&mut out, Tok::Tilde);
                    i += 1;
                }
                '.' => {
                    push(&mut out, Tok::Dot);
                    i += 1;
                }
                ',' => {
                    push(&mut out, Tok::Comma);
                    i += 1;
                }
                '[' => {
                    push(&mut out, Tok::LBracket);
                    i += 1;
                }
                ']' => {
                    push(&mut out, Tok::RBracket);
                    i += 1;
                }
                '{' => {
                    push(&mut out, Tok::LBrace);
                    i += 1;
                }
                '}' => {
                    push(&mut out, Tok::RBrace);
                    i += 1;
                }
                '>' => {
                    push(&mut out, Tok::Gt);
                    i += 1;
                }
                '<' if chars.get(i + 1) == Some(&'-') => {
                    push(&mut out, Tok::StrictArrow);
                    i += 2;
                }
                '-' if chars.get(i + 1) == Some(&'<') => {
                    push(&mut out, Tok::DefArrow);
                    i += 2;
                }
                '-' if chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()) => {
                    let start = i;
                    i += 1;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let s: String = chars[start..i].iter().collect();
                    let v = s.parse().map_err(|_| {
                        syntax(line_no, column, format!("integer out of range: {s}"))
                    })?;
                    push(&mut out, Tok::Int(v));
                }
                '#' => {
                    let start = i + 1;
                    i += 1;
                    while i < chars.len() && chars[i].is_ascii_alphabetic() {
                        i += 1;
                    }
                    let word: String = chars[start..i].iter().collect();
                    if word.is_empty() {
                        return Err(syntax(line_no, column, "expected directive name after `#`"));
                    }
                    push(&mut out, Tok::Directive(word));
                }
                c if c.is_ascii_alphanumeric() || c == '_' => {
                    let start = i;
                    while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                        i += 1;
                    }
                    let word: String = chars[start..i].iter().collect();
                    push(&mut out, Tok::Ident(word));
                }
                other => {
                    return Err(syntax(
                        line_no,
                        column,
                        format!("unexpected character `{other}`"),
                    ));
                }
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|s| (s.line, s.column))
            .unwrap_or(self.end)
    }

    fn error(&self, message: impl Into<String>) -> ProgramError {
        let (l, c) = self.here();
        syntax(l, c, message)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|s| s.tok.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok) -> Result<(), ProgramError> {
        match self.peek() {
            Some(t) if *t == want => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(self.error(format!(
                "expected {}, found {}",
                want.describe(),
                t.describe()
            ))),
            None => Err(self.error(format!("expected {}, found end of input", want.describe()))),
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, ProgramError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            Some(t) => Err(self.error(format!("expected {what}, found {}", t.describe()))),
            None => Err(self.error(format!("expected {what}, found end of input"))),
        }
    }

    fn literal(&mut self) -> Result<Literal, ProgramError> {
        let negated = if self.peek() == Some(&Tok::Tilde) {
            self.pos += 1;
            true
        } else {
            false
        };
        let atom = self.ident("literal")?;
        Literal::new(&atom, negated).map_err(|e| self.error(e.to_string()))
    }

    fn literal_list(&mut self) -> Result<Vec<Literal>, ProgramError> {
        let mut out = Vec::new();
        if self.peek() == Some(&Tok::Dot) {
            return Ok(out);
        }
        out.push(self.literal()?);
        while self.peek() == Some(&Tok::Comma) {
            self.pos += 1;
            out.push(self.literal()?);
        }
        Ok(out)
    }

    fn id_set(&mut self) -> Result<BTreeSet<String>, ProgramError> {
        self.expect(Tok::LBrace)?;
        let mut out = BTreeSet::new();
        if self.peek() != Some(&Tok::RBrace) {
            out.insert(self.ident("rule id")?);
            while self.peek() == Some(&Tok::Comma) {
                self.pos += 1;
                out.insert(self.ident("rule id")?);
            }
        }
        self.expect(Tok::RBrace)?;
        Ok(out)
    }

    fn optional_dot(&mut self) {
        if self.peek() == Some(&Tok::Dot) {
            self.pos += 1;
        }
    }
}

/// Parses a program and checks that its strict part is non-contradictory.
pub fn parse_program(text: &str) -> Result<Program, ProgramError> {
    let toks = lex(text)?;
    let end = (
        text.lines().count().max(1),
        text.lines().last().map_or(1, |l| l.len() + 1),
    );
    let mut p = Parser { toks, pos: 0, end };
    let mut b = Program::builder();

    while let Some(tok) = p.peek().cloned() {
        match tok {
            Tok::Directive(name) => {
                p.pos += 1;
                match name.as_str() {
                    "prio" => {
                        let rule = p.ident("rule id")?;
                        let rank = match p.next() {
                            Some(Tok::Int(v)) => v,
                            Some(Tok::Ident(s)) => s.parse().map_err(|_| {
                                p.pos -= 1;
                                p.error(format!("expected integer, found `{s}`"))
                            })?,
                            _ => {
                                p.pos -= 1;
                                return Err(p.error("expected integer priority"));
                            }
                        };
                        p.optional_dot();
                        b.push_priority(rule, rank);
                    }
                    "prefer" => {
                        let better = p.id_set()?;
                        p.expect(Tok::Gt)?;
                        let worse = p.id_set()?;
                        p.optional_dot();
                        b.push_preference(Preference { better, worse });
                    }
                    "ordering" => {
                        let mode = p.ident("ordering mode")?;
                        let mode: OrderingMode = mode.parse().map_err(|e: ProgramError| {
                            p.pos -= 1;
                            p.error(e.to_string())
                        })?;
                        p.optional_dot();
                        b.set_ordering(mode);
                    }
                    other => {
                        p.pos -= 1;
                        return Err(p.error(format!("unknown directive `#{other}`")));
                    }
                }
            }
            _ => {
                let label = if p.peek() == Some(&Tok::LBracket) {
                    p.pos += 1;
                    let l = p.ident("rule label")?;
                    p.expect(Tok::RBracket)?;
                    Some(l)
                } else {
                    None
                };
                let head = p.literal()?;
                match p.peek() {
                    Some(Tok::Dot) if label.is_none() => {
                        p.pos += 1;
                        b.push_fact(head);
                    }
                    Some(Tok::Dot) => return Err(p.error("labels apply to rules, not facts")),
                    Some(Tok::StrictArrow) => {
                        p.pos += 1;
                        let body = p.literal_list()?;
                        if body.is_empty() {
                            return Err(p.error("strict rule needs a non-empty body"));
                        }
                        p.expect(Tok::Dot)?;
                        b.push_rule(label, RuleKind::Strict, head, body);
                    }
                    Some(Tok::DefArrow) => {
                        p.pos += 1;
                        let body = p.literal_list()?;
                        p.expect(Tok::Dot)?;
                        b.push_rule(label, RuleKind::Defeasible, head, body);
                    }
                    Some(t) => {
                        let msg = format!("expected `.`, `<-` or `-<`, found {}", t.describe());
                        return Err(p.error(msg));
                    }
                    None => return Err(p.error("unterminated statement")),
                }
            }
        }
    }
    b.build()
}

/// Normalized text form: ordering, facts, strict rules, defeasible rules,
/// priorities, preferences. Every rule is printed with its label, so
/// `parse_program(&print_program(p)) == p`.
pub fn print_program(p: &Program) -> String {
    let mut out = String::new();
    if p.ordering() != OrderingMode::Explicit {
        let _ = writeln!(out, "#ordering {}", p.ordering().keyword());
    }
    for f in p.facts() {
        let _ = writeln!(out, "{f}.");
    }
    for r in p.strict_rules().iter().chain(p.defeasible_rules()) {
        let _ = writeln!(out, "{r}");
    }
    for (rule, rank) in p.priorities() {
        let _ = writeln!(out, "#prio {rule} {rank}");
    }
    for pref in p.preferences() {
        let set = |s: &BTreeSet<String>| s.iter().cloned().collect::<Vec<_>>().join(", ");
        let _ = writeln!(
            out,
            "#prefer {{{}}} > {{{}}}",
            set(&pref.better),
            set(&pref.worse)
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fact_and_defeasible_rule() {
        let p = parse_program("waves.\n~nice -< rain.").unwrap();
        assert!(p.facts().contains(&Literal::pos("waves")));
        let r = &p.defeasible_rules()[0];
        assert_eq!(r.head(), &Literal::neg("nice"));
        assert_eq!(r.body(), &[Literal::pos("rain")]);
        assert_eq!(r.id(), "d1");
    }

    #[test]
    fn complementary_facts_are_rejected() {
        let err = parse_program("p. ~p.").unwrap_err();
        assert!(matches!(err, ProgramError::Contradictory(..)));
        assert!(err.to_string().contains("contradictory strict part"));
    }

    #[test]
    fn presumptions_labels_and_directives() {
        let src = "% header\n[h1] h -< .\n[s] a <- h, ~b. % trailing\n#prio h1 4\n#prefer {h1} > {}\n#ordering simple\n";
        let p = parse_program(src).unwrap();
        assert!(p.defeasible_rules()[0].is_presumption());
        assert_eq!(p.strict_rules()[0].id(), "s");
        assert_eq!(p.priorities()["h1"], 4);
        assert_eq!(p.ordering(), OrderingMode::Simple);
        assert_eq!(p.preferences().len(), 1);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_program("a.\nb <- .\n").unwrap_err() {
            ProgramError::Syntax { line, column, .. } => assert_eq!((line, column), (2, 6)),
            e => panic!("unexpected {e}"),
        }
        match parse_program("a -< b").unwrap_err() {
            ProgramError::Syntax { line, .. } => assert_eq!(line, 1),
            e => panic!("unexpected {e}"),
        }
        match parse_program("a $ b.").unwrap_err() {
            ProgramError::Syntax { column, .. } => assert_eq!(column, 3),
            e => panic!("unexpected {e}"),
        }
        assert!(matches!(
            parse_program("#prio nope 1").unwrap_err(),
            ProgramError::UnknownRule(_)
        ));
        assert!(matches!(
            parse_program("#ordering weakest").unwrap_err(),
            ProgramError::Syntax { .. }
        ));
        assert!(matches!(
            parse_program("[x] a.").unwrap_err(),
            ProgramError::Syntax { .. }
        ));
    }

    #[test]
    fn duplicate_labels_are_rejected() {
        assert_eq!(
            parse_program("[r] a -< .\n[r] b -< .").unwrap_err(),
            ProgramError::DuplicateLabel("r".into())
        );
    }

    #[test]
    fn negative_priorities_parse() {
        let p = parse_program("a -< .\n#prio d1 -3").unwrap();
        assert_eq!(p.priorities()["d1"], -3);
    }

    #[test]
    fn print_then_parse_is_identity() {
        let src = "#ordering lastlink\nf1. f2.\nr <- p, q.\n~q <- p, ~r.\np -< f1.\n~r -< f2.\nq -< p.\n#prio d1 1\n#prio d2 2\n#prio d3 3\n";
        let p = parse_program(src).unwrap();
        assert_eq!(parse_program(&print_program(&p)).unwrap(), p);
    }
}
