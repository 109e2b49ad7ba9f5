//! Positional inverted index and its line-oriented file format.
//!
//! ```text
//! IVX1 <doc count>
//! D <id> <word count> <path>
//! T <term>
//! P <doc id> <pos> <pos> ...
//! ```

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::tokenize::tokenize;

pub type DocId = u32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub path: String,
    pub words: u32,
}

/// Per-document occurrence lists of one term, sorted by document.
pub type Postings = Vec<(DocId, Vec<u32>)>;

#[derive(Debug, Error)]
pub enum IndexError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PositionalIndex {
    docs: Vec<Document>,
    terms: BTreeMap<String, Postings>,
}

impl PositionalIndex {
    pub fn new() -> PositionalIndex {
        PositionalIndex::default()
    }

    /// Indexes `text` as the next document.
    pub fn add_document(&mut self, path: impl Into<String>, text: &str) -> DocId {
        let id = self.docs.len() as DocId;
        let tokens = tokenize(text);
        for (term, pos) in &tokens {
            let postings = self.terms.entry(term.clone()).or_default();
            match postings.last_mut() {
                Some((doc, positions)) if *doc == id => positions.push(*pos),
                _ => postings.push((id, vec![*pos])),
            }
        }
        self.docs.push(Document {
            path: path.into(),
            words: tokens.len() as u32,
        });
        id
    }

    /// Reads and indexes each file in order.
    pub fn from_files<P: AsRef<Path>>(paths: &[P]) -> Result<PositionalIndex, IndexError> {
        let mut index = PositionalIndex::new();
        for path in paths {
            let path = path.as_ref();
            let text = std::fs::read_to_string(path).map_err(|source| IndexError::Io {
                path: path.to_path_buf(),
                source,
            })?;
            index.add_document(path.to_string_lossy(), &text);
        }
        Ok(index)
    }

    pub fn docs(&self) -> &[Document] {
        &self.docs
    }

    pub fn doc(&self, id: DocId) -> Option<&Document> {
        self.docs.get(id as usize)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&str, &Postings)> {
        self.terms.iter().map(|(t, p)| (t.as_str(), p))
    }

    pub fn postings(&self, term: &str) -> &[(DocId, Vec<u32>)] {
        self.terms.get(term).map_or(&[], Vec::as_slice)
    }

    pub fn positions(&self, term: &str, doc: DocId) -> &[u32] {
        let postings = self.postings(term);
        match postings.binary_search_by_key(&doc, |(d, _)| *d) {
            Ok(i) => &postings[i].1,
            Err(_) => &[],
        }
    }

    /// The document's words in order, rebuilt from the postings.
    pub fn document_words(&self, doc: DocId) -> Vec<String> {
        let len = self.doc(doc).map_or(0, |d| d.words as usize);
        let mut words = vec![String::new(); len];
        for (term, _) in self.terms() {
            for &pos in self.positions(term, doc) {
                words[pos as usize] = term.to_string();
            }
        }
        words
    }

    pub fn write_to<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "IVX1 {}", self.docs.len())?;
        for (id, d) in self.docs.iter().enumerate() {
            writeln!(out, "D {id} {} {}", d.words, d.path)?;
        }
        for (term, postings) in &self.terms {
            writeln!(out, "T {term}")?;
            for (doc, positions) in postings {
                write!(out, "P {doc}")?;
                for p in positions {
                    write!(out, " {p}")?;
                }
                writeln!(out)?;
            }
        }
        out.flush()
    }

    pub fn read_from<R: BufRead>(input: R) -> Result<PositionalIndex, IndexError> {
        Parser::default().run(input)
    }

    pub fn save(&self, path: &Path) -> Result<(), IndexError> {
        let io_err = |source| IndexError::Io {
            path: path.to_path_buf(),
            source,
        };
        let file = File::create(path).map_err(io_err)?;
        self.write_to(BufWriter::new(file)).map_err(io_err)
    }

    pub fn load(path: &Path) -> Result<PositionalIndex, IndexError> {
        let file = File::open(path).map_err(|source| IndexError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        PositionalIndex::read_from(BufReader::new(file)).map_err(|e| match e {
            IndexError::Io { source, .. } => IndexError::Io {
                path: path.to_path_buf(),
                source,
            },
            parse => parse,
        })
    }
}

#[derive(Default)]
struct Parser {
    index: PositionalIndex,
    expected_docs: usize,
    term: Option<String>,
    line: usize,
}

impl Parser {
    fn error(&self, message: impl Into<String>) -> IndexError {
        IndexError::Parse {
            line: self.line,
            message: message.into(),
        }
    }

    fn number<T: std::str::FromStr>(&self, field: Option<&str>, what: &str) -> Result<T, IndexError> {
        field
            .and_then(|f| f.parse().ok())
            .ok_or_else(|| self.error(format!("expected {what}")))
    }

    fn run<R: BufRead>(mut self, input: R) -> Result<PositionalIndex, IndexError> {
        for line in input.lines() {
            self.line += 1;
            let line = line.map_err(|source| IndexError::Io {
                path: PathBuf::new(),
                source,
            })?;
            self.record(&line)?;
        }
        if self.line == 0 {
            return Err(self.error("missing IVX1 header"));
        }
        if self.index.docs.len() != self.expected_docs {
            return Err(self.error(format!(
                "header declares {} documents, found {}",
                self.expected_docs,
                self.index.docs.len()
            )));
        }
        Ok(self.index)
    }

    fn record(&mut self, line: &str) -> Result<(), IndexError> {
        if self.line == 1 {
            let count = line
                .strip_prefix("IVX1 ")
                .ok_or_else(|| self.error("missing IVX1 header"))?;
            self.expected_docs = self.number(Some(count), "document count")?;
            return Ok(());
        }
        let (tag, rest) = line.split_once(' ').unwrap_or((line, ""));
        match tag {
            "D" => {
                if !self.index.terms.is_empty() {
                    return Err(self.error("document line after terms"));
                }
                let mut fields = rest.splitn(3, ' ');
                let id: usize = self.number(fields.next(), "document id")?;
                if id != self.index.docs.len() {
                    return Err(self.error(format!("document id {id} out of sequence")));
                }
                let words = self.number(fields.next(), "word count")?;
                let path = fields.next().ok_or_else(|| self.error("expected path"))?;
                self.index.docs.push(Document {
                    path: path.to_string(),
                    words,
                });
            }
            "T" => {
                if rest.is_empty() || self.index.terms.contains_key(rest) {
                    return Err(self.error("empty or repeated term"));
                }
                if self.term.as_deref().is_some_and(|prev| prev >= rest) {
                    return Err(self.error("terms out of order"));
                }
                self.index.terms.insert(rest.to_string(), Vec::new());
                self.term = Some(rest.to_string());
            }
            "P" => {
                let term = self
                    .term
                    .clone()
                    .ok_or_else(|| self.error("postings before any term"))?;
                let mut fields = rest.split(' ');
                let doc: DocId = self.number(fields.next(), "document id")?;
                let words = self
                    .index
                    .doc(doc)
                    .ok_or_else(|| self.error(format!("unknown document {doc}")))?
                    .words;
                let positions = fields
                    .map(|f| self.number::<u32>(Some(f), "position"))
                    .collect::<Result<Vec<_>, _>>()?;
                if positions.is_empty() {
                    return Err(self.error("empty position list"));
                }
                if positions.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(self.error("positions not strictly increasing"));
                }
                if positions.last().is_some_and(|&p| p >= words) {
                    return Err(self.error(format!("position beyond word count {words}")));
                }
                let postings = self.index.terms.get_mut(&term).expect("current term present");
                if postings.last().is_some_and(|(d, _)| *d >= doc) {
                    return Err(self.error("documents not strictly increasing"));
                }
                postings.push((doc, positions));
            }
            _ => return Err(self.error(format!("unknown record {tag:?}"))),
        }
        Ok(())
    }
}
