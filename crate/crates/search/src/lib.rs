//! Proximity search over a positional inverted index.
//!
//! Queries are parsed with [`parse_query`], filtered to candidate documents
//! with [`candidate_docs`], and evaluated per document into antichains of
//! witness intervals by the lazy operators of [`minterval`].

pub mod eval;
pub mod index;
pub mod query;
pub mod rank;
pub mod snippet;
pub mod tokenize;

pub use eval::{candidate_docs, evaluate, root_profile};
pub use index::{DocId, IndexError, PositionalIndex};
pub use query::{parse_query, Query, SyntaxError};
pub use rank::{rank, Scorer};
pub use snippet::snippets;
pub use tokenize::tokenize;

use minterval::Interval;

#[derive(Clone, Debug, PartialEq)]
pub struct Snippet {
    pub interval: Interval,
    pub words: Vec<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct QueryResult {
    pub doc: DocId,
    pub witnesses: Vec<Interval>,
    pub score: f64,
    pub snippets: Vec<Snippet>,
}

/// Matching documents by descending score, ties by document id, at most
/// `top` of them, each with up to `snippet_count` snippets.
pub fn search(index: &PositionalIndex, query: &Query, top: usize, snippet_count: usize) -> Vec<QueryResult> {
    let scorer = Scorer::default();
    let mut results: Vec<QueryResult> = candidate_docs(query, index)
        .into_iter()
        .filter_map(|doc| {
            let witnesses = evaluate(query, index, doc);
            (!witnesses.is_empty()).then(|| QueryResult {
                doc,
                score: scorer.score(&witnesses),
                witnesses,
                snippets: Vec::new(),
            })
        })
        .collect();
    results.sort_by(|a, b| b.score.total_cmp(&a.score).then(a.doc.cmp(&b.doc)));
    results.truncate(top);
    if snippet_count > 0 {
        for r in &mut results {
            let words = index.document_words(r.doc);
            r.snippets = snippets(&r.witnesses, snippet_count)
                .into_iter()
                .map(|iv| {
                    let (l, r) = (
                        iv.left().finite().unwrap() as usize,
                        iv.right().finite().unwrap() as usize,
                    );
                    Snippet {
                        interval: iv,
                        words: words[l..=r].to_vec(),
                    }
                })
                .collect();
        }
    }
    results
}
