//! Tokenization, vocabulary construction and bag-of-words vectorization.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::nb::{FeatureMatrix, SparseRow};

/// Tokens shorter than this many characters are dropped.
pub const MIN_TOKEN_CHARS: usize = 2;

/// A lowercase token sequence.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TokenizedDoc {
    tokens: Vec<String>,
}

impl TokenizedDoc {
    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

/// Lowercases, splits on runs of non-alphanumeric characters and keeps
/// tokens of at least [`MIN_TOKEN_CHARS`] characters.
pub fn tokenize(text: &str) -> TokenizedDoc {
    let tokens = text
        .split(|c: char| !c.is_alphanumeric())
        .filter(|t| t.chars().count() >= MIN_TOKEN_CHARS)
        .map(str::to_lowercase)
        .collect();
    TokenizedDoc { tokens }
}

/// Frozen token to column map with dense, lexicographically ordered indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vocabulary {
    tokens: Vec<String>,
    index: HashMap<String, usize>,
}

impl Vocabulary {
    /// Builds a vocabulary from an arbitrary token set.
    pub fn from_tokens<I, S>(tokens: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let sorted: BTreeSet<String> = tokens.into_iter().map(Into::into).collect();
        if sorted.is_empty() {
            return Err(Error::Data("empty vocabulary".into()));
        }
        let tokens: Vec<String> = sorted.into_iter().collect();
        let index = tokens
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        Ok(Vocabulary { tokens, index })
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn get(&self, token: &str) -> Option<usize> {
        self.index.get(token).copied()
    }

    pub fn token(&self, index: usize) -> Option<&str> {
        self.tokens.get(index).map(String::as_str)
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    /// Writes `token,index` rows under a header.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["token", "index"])?;
        for (i, t) in self.tokens.iter().enumerate() {
            w.write_record([t.as_str(), &i.to_string()])?;
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }

    /// Reads the format written by [`Vocabulary::write_csv`]. Indices must be dense
    /// and match the lexicographic order of the tokens.
    pub fn read_csv<R: Read>(reader: R) -> Result<Self> {
        let mut r = csv::Reader::from_reader(reader);
        let mut pairs = Vec::new();
        for rec in r.records() {
            let rec = rec?;
            let token = rec.get(0).unwrap_or_default().to_string();
            let index: usize = rec
                .get(1)
                .unwrap_or_default()
                .trim()
                .parse()
                .map_err(|_| Error::Data(format!("bad vocabulary index in {rec:?}")))?;
            pairs.push((index, token));
        }
        pairs.sort();
        let vocab = Vocabulary::from_tokens(pairs.iter().map(|(_, t)| t.clone()))?;
        for (i, (index, token)) in pairs.iter().enumerate() {
            if *index != i || vocab.tokens[i] != *token {
                return Err(Error::Data(
                    "vocabulary indices must be dense and sorted by token".into(),
                ));
            }
        }
        Ok(vocab)
    }
}

/// Keeps tokens occurring in at least `min_doc_freq` documents.
pub fn build_vocabulary(corpus: &[TokenizedDoc], min_doc_freq: usize) -> Result<Vocabulary> {
    if corpus.is_empty() {
        return Err(Error::Data(
            "cannot build a vocabulary from an empty corpus".into(),
        ));
    }
    let min_doc_freq = min_doc_freq.max(1);
    let mut df: BTreeMap<&str, usize> = BTreeMap::new();
    for doc in corpus {
        let unique: BTreeSet<&str> = doc.tokens.iter().map(String::as_str).collect();
        for t in unique {
            *df.entry(t).or_default() += 1;
        }
    }
    Vocabulary::from_tokens(
        df.into_iter()
            .filter(|&(_, f)| f >= min_doc_freq)
            .map(|(t, _)| t),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VectorizeMode {
    Counts,
    Binary,
}

/// Bag-of-words row for one document; out-of-vocabulary tokens are dropped.
pub fn vectorize_doc(doc: &TokenizedDoc, vocab: &Vocabulary, mode: VectorizeMode) -> SparseRow {
    let pairs = doc
        .tokens
        .iter()
        .filter_map(|t| vocab.get(t))
        .map(|i| (i, 1));
    let row = SparseRow::from_pairs(pairs.collect());
    match mode {
        VectorizeMode::Counts => row,
        VectorizeMode::Binary => row.binarized(),
    }
}

pub fn vectorize(
    corpus: &[TokenizedDoc],
    vocab: &Vocabulary,
    mode: VectorizeMode,
) -> Vec<SparseRow> {
    corpus
        .iter()
        .map(|d| vectorize_doc(d, vocab, mode))
        .collect()
}

/// Vectorizes labelled documents into a [`FeatureMatrix`].
pub fn vectorize_labeled(
    corpus: &[TokenizedDoc],
    labels: &[usize],
    n_classes: usize,
    vocab: &Vocabulary,
    mode: VectorizeMode,
) -> Result<FeatureMatrix> {
    FeatureMatrix::new(
        vectorize(corpus, vocab, mode),
        labels.to_vec(),
        n_classes,
        vocab.len(),
    )
}
