//! Query language.
//!
//! ```text
//! query   := minus ('|' minus)*
//! minus   := conj ('-' conj)*          left-associative
//! conj    := postfix (('&' | '<') postfix)*   one operator per level
//! postfix := atom ('~' k)*
//! atom    := word | '"' words '"' | '(' query ')'
//! ```

use std::fmt;

use thiserror::Error;

use crate::tokenize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Query {
    Term(String),
    Or(Vec<Query>),
    And(Vec<Query>),
    Block(Vec<Query>),
    OrderedAnd(Vec<Query>),
    LowPass(Box<Query>, u64),
    Minus(Box<Query>, Box<Query>),
}

impl Query {
    pub fn term(t: &str) -> Query {
        Query::Term(t.to_string())
    }

    /// Every term occurring in the query, in order of appearance.
    pub fn terms(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_terms(&mut out);
        out
    }

    fn collect_terms<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Query::Term(t) => out.push(t),
            Query::Or(c) | Query::And(c) | Query::Block(c) | Query::OrderedAnd(c) => {
                c.iter().for_each(|q| q.collect_terms(out))
            }
            Query::LowPass(q, _) => q.collect_terms(out),
            Query::Minus(a, b) => {
                a.collect_terms(out);
                b.collect_terms(out);
            }
        }
    }
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, sep: &str, c: &[Query]| {
            f.write_str("(")?;
            for (i, q) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(sep)?;
                }
                write!(f, "{q}")?;
            }
            f.write_str(")")
        };
        match self {
            Query::Term(t) => f.write_str(t),
            Query::Or(c) => list(f, " | ", c),
            Query::And(c) => list(f, " & ", c),
            Query::OrderedAnd(c) => list(f, " < ", c),
            Query::Block(c) => {
                // blocks of blocks have no quoted form
                if c.iter().all(|q| matches!(q, Query::Term(_))) {
                    f.write_str("\"")?;
                    for (i, q) in c.iter().enumerate() {
                        if i > 0 {
                            f.write_str(" ")?;
                        }
                        write!(f, "{q}")?;
                    }
                    f.write_str("\"")
                } else {
                    list(f, " . ", c)
                }
            }
            Query::LowPass(q, k) => write!(f, "({q})~{k}"),
            Query::Minus(a, b) => write!(f, "({a} - {b})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("syntax error at offset {offset}: {message}")]
pub struct SyntaxError {
    /// Byte offset into the query text.
    pub offset: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Phrase(Vec<String>),
    Sym(char),
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, SyntaxError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(at, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_alphanumeric() {
            let mut end = at;
            while let Some(&(i, c)) = chars.peek() {
                if !c.is_alphanumeric() {
                    break;
                }
                end = i + c.len_utf8();
                chars.next();
            }
            out.push((Tok::Word(text[at..end].to_lowercase()), at));
        } else if c == '"' {
            chars.next();
            let close = text[at + 1..].find('"').ok_or_else(|| SyntaxError {
                offset: at,
                message: "unterminated phrase".into(),
            })?;
            let body = &text[at + 1..at + 1 + close];
            let words: Vec<String> = tokenize::words(body).collect();
            if words.is_empty() {
                return Err(SyntaxError {
                    offset: at,
                    message: "empty phrase".into(),
                });
            }
            out.push((Tok::Phrase(words), at));
            while chars.peek().is_some_and(|&(i, _)| i <= at + 1 + close) {
                chars.next();
            }
        } else if "|&<-~()".contains(c) {
            out.push((Tok::Sym(c), at));
            chars.next();
        } else {
            return Err(SyntaxError {
                offset: at,
                message: format!("unexpected character {c:?}"),
            });
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, SyntaxError> {
        Err(SyntaxError {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn eat(&mut self, sym: char) -> bool {
        if *self.peek() == Tok::Sym(sym) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn or(&mut self) -> Result<Query, SyntaxError> {
        let mut items = vec![self.minus()?];
        while self.eat('|') {
            items.push(self.minus()?);
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            Query::Or(items)
        })
    }

    fn minus(&mut self) -> Result<Query, SyntaxError> {
        let mut q = self.conj()?;
        while self.eat('-') {
            q = Query::Minus(Box::new(q), Box::new(self.conj()?));
        }
        Ok(q)
    }

    fn conj(&mut self) -> Result<Query, SyntaxError> {
        let mut items = vec![self.postfix()?];
        let mut op = None;
        while let Tok::Sym(c @ ('&' | '<')) = *self.peek() {
            if op.is_some_and(|o| o != c) {
                return self.error("mixing '&' and '<' needs parentheses");
            }
            op = Some(c);
            self.pos += 1;
            items.push(self.postfix()?);
        }
        Ok(match op {
            None => items.pop().unwrap(),
            Some('&') => Query::And(items),
            Some(_) => Query::OrderedAnd(items),
        })
    }

    fn postfix(&mut self) -> Result<Query, SyntaxError> {
        let mut q = self.atom()?;
        while self.eat('~') {
            let k = match self.peek() {
                Tok::Word(w) if w.bytes().all(|b| b.is_ascii_digit()) => w.parse::<u64>().ok(),
                _ => None,
            };
            match k {
                Some(k) if k >= 1 => {
                    self.pos += 1;
                    q = Query::LowPass(Box::new(q), k);
                }
                _ => return self.error("expected a positive integer after '~'"),
            }
        }
        Ok(q)
    }

    fn atom(&mut self) -> Result<Query, SyntaxError> {
        match self.peek().clone() {
            Tok::Word(w) => {
                self.pos += 1;
                Ok(Query::Term(w))
            }
            Tok::Phrase(mut words) => {
                self.pos += 1;
                Ok(if words.len() == 1 {
                    Query::Term(words.pop().unwrap())
                } else {
                    Query::Block(words.into_iter().map(Query::Term).collect())
                })
            }
            Tok::Sym('(') => {
                self.pos += 1;
                let q = self.or()?;
                if !self.eat(')') {
                    return self.error("expected ')'");
                }
                Ok(q)
            }
            Tok::End => self.error("unexpected end of query"),
            Tok::Sym(c) => self.error(format!("unexpected '{c}'")),
        }
    }
}

pub fn parse_query(text: &str) -> Result<Query, SyntaxError> {
    let mut parser = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let q = parser.or()?;
    if *parser.peek() != Tok::End {
        return parser.error("unexpected trailing input");
    }
    Ok(q)
}
