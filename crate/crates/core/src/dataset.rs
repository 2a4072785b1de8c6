//! Labeled sparse datasets and the SVMlight/LIBSVM text format.
//!
//! One example per line, `label index:value` pairs with 1-based,
//! strictly increasing indices, and `#` starting a comment that runs to
//! the end of the line:
//!
//! ```text
//! +1 1:0.5 3:-2   # positive example with features 1 and 3
//! -1 2:1
//! ```
//!
//! Labels must be exactly `+1` or `-1`. Indices are stored 0-based; the
//! dimension is inferred as one past the largest stored index unless a
//! larger dimension is supplied explicitly.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::point::Point;

/// One binary-labeled sparse example.
#[derive(Debug, Clone, PartialEq)]
pub struct Example {
    /// Sorted `(index, value)` pairs with strictly increasing 0-based indices.
    pub features: Vec<(usize, f64)>,
    /// `+1.0` or `-1.0`.
    pub label: f64,
}

impl Example {
    /// Sparse inner product with a dense vector.
    pub fn dot(&self, w: &Point) -> f64 {
        let w = w.as_slice();
        self.features.iter().map(|(i, v)| v * w[*i]).sum()
    }

    pub fn norm(&self) -> f64 {
        self.features
            .iter()
            .map(|(_, v)| v * v)
            .sum::<f64>()
            .sqrt()
    }
}

/// A set of binary-labeled sparse examples over a fixed dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    examples: Vec<Example>,
    dim: usize,
}

impl Dataset {
    pub fn new(examples: Vec<Example>, dim: usize) -> Result<Self> {
        if examples.is_empty() {
            return Err(Error::usage("dataset must contain at least one example"));
        }
        if dim == 0 {
            return Err(Error::usage("dataset dimension must be at least 1"));
        }
        for (n, ex) in examples.iter().enumerate() {
            if ex.label != 1.0 && ex.label != -1.0 {
                return Err(Error::usage(format!(
                    "example {n}: label must be \u{b1}1, got {}",
                    ex.label
                )));
            }
            for window in ex.features.windows(2) {
                if window[1].0 <= window[0].0 {
                    return Err(Error::usage(format!(
                        "example {n}: feature indices must be strictly increasing"
                    )));
                }
            }
            if let Some((i, v)) = ex.features.last() {
                if *i >= dim {
                    return Err(Error::usage(format!(
                        "example {n}: feature index {i} out of range for dimension {dim}"
                    )));
                }
                if !v.is_finite() {
                    return Err(Error::usage(format!("example {n}: non-finite value")));
                }
            }
            if ex.features.iter().any(|(_, v)| !v.is_finite()) {
                return Err(Error::usage(format!("example {n}: non-finite value")));
            }
        }
        Ok(Dataset { examples, dim })
    }

    pub fn examples(&self) -> &[Example] {
        &self.examples
    }

    pub fn len(&self) -> usize {
        self.examples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.examples.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Largest example norm, used for subgradient norm bounds.
    pub fn max_example_norm(&self) -> f64 {
        self.examples
            .iter()
            .map(Example::norm)
            .fold(0.0, f64::max)
    }

    /// Renders the dataset in SVMlight text form with 1-based indices and
    /// 17-significant-digit values, so parsing it back reproduces the
    /// numeric content exactly.
    pub fn to_svmlight(&self) -> String {
        let mut out = String::new();
        for ex in &self.examples {
            out.push_str(if ex.label > 0.0 { "+1" } else { "-1" });
            for (i, v) in &ex.features {
                let _ = write!(out, " {}:{:.16e}", i + 1, v);
            }
            out.push('\n');
        }
        out
    }
}

/// Parses SVMlight text. The dimension is inferred from the largest index.
pub fn parse_svmlight(text: &str) -> Result<Dataset> {
    parse_svmlight_with_dim(text, None)
}

/// Parses SVMlight text with an explicit dimension override, which must be
/// at least as large as every index in the file.
pub fn parse_svmlight_with_dim(text: &str, dim: Option<usize>) -> Result<Dataset> {
    let mut examples = Vec::new();
    let mut max_index = None::<usize>;

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut tokens = content.split_whitespace();
        let label_tok = tokens.next().expect("non-empty line has a first token");
        let label: f64 = label_tok
            .parse()
            .map_err(|_| parse_err(line, format!("unparsable label {label_tok:?}")))?;
        if label != 1.0 && label != -1.0 {
            return Err(parse_err(line, format!("label must be \u{b1}1, got {label_tok}")));
        }

        let mut features = Vec::new();
        let mut prev_index = None::<usize>;
        for tok in tokens {
            let (idx_str, val_str) = tok
                .split_once(':')
                .ok_or_else(|| parse_err(line, format!("token {tok:?} is not index:value")))?;
            let one_based: usize = idx_str
                .parse()
                .map_err(|_| parse_err(line, format!("unparsable index {idx_str:?}")))?;
            if one_based == 0 {
                return Err(parse_err(line, "indices are 1-based; got 0".to_string()));
            }
            let index = one_based - 1;
            if prev_index.is_some_and(|p| index <= p) {
                return Err(parse_err(
                    line,
                    format!("indices must be strictly increasing; {one_based} repeats or goes back"),
                ));
            }
            let value: f64 = val_str
                .parse()
                .map_err(|_| parse_err(line, format!("unparsable value {val_str:?}")))?;
            if !value.is_finite() {
                return Err(parse_err(line, format!("non-finite value {val_str:?}")));
            }
            prev_index = Some(index);
            features.push((index, value));
        }
        max_index = max_index.max(prev_index);
        examples.push(Example { features, label });
    }

    if examples.is_empty() {
        return Err(Error::usage("dataset must contain at least one example"));
    }
    let inferred = max_index.map(|m| m + 1);
    let dim = match (dim, inferred) {
        (Some(d), Some(need)) if d < need => {
            return Err(Error::usage(format!(
                "dimension override {d} smaller than largest index ({need})"
            )))
        }
        (Some(d), _) => d,
        (None, Some(d)) => d,
        (None, None) => {
            return Err(Error::usage(
                "cannot infer dimension: no features present; supply one explicitly",
            ))
        }
    };
    Dataset::new(examples, dim)
}

fn parse_err(line: usize, message: String) -> Error {
    Error::Parse { line, message }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_basic_line() {
        let data = parse_svmlight("+1 1:0.5 3:-2\n").unwrap();
        assert_eq!(data.len(), 1);
        assert_eq!(data.dim(), 3);
        let ex = &data.examples()[0];
        assert_eq!(ex.label, 1.0);
        assert_eq!(ex.features, vec![(0, 0.5), (2, -2.0)]);
    }

    #[test]
    fn skips_blank_lines_and_comments() {
        let data = parse_svmlight("-1 2:1\n\n# full comment line\n+1 1:1 # trailing\n").unwrap();
        assert_eq!(data.len(), 2);
        assert_eq!(data.dim(), 2);
    }

    #[test]
    fn rejects_bad_labels() {
        let err = parse_svmlight("+2 1:1\n").unwrap_err();
        let text = err.to_string();
        assert!(text.contains("label must be"), "{text}");
        assert!(text.contains("line 1"), "{text}");
    }

    #[test]
    fn rejects_non_increasing_indices() {
        assert!(parse_svmlight("+1 2:1 2:3\n").is_err());
        assert!(parse_svmlight("+1 3:1 2:3\n").is_err());
    }

    #[test]
    fn rejects_malformed_tokens_with_line_number() {
        let err = parse_svmlight("+1 1:1\n-1 oops\n").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        assert!(parse_svmlight("+1 0:1\n").is_err(), "index 0 is invalid");
        assert!(parse_svmlight("+1 1:nanana\n").is_err());
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(parse_svmlight("").is_err());
        assert!(parse_svmlight("# nothing here\n").is_err());
    }

    #[test]
    fn dimension_override() {
        let data = parse_svmlight_with_dim("+1 1:1\n", Some(10)).unwrap();
        assert_eq!(data.dim(), 10);
        assert!(parse_svmlight_with_dim("+1 5:1\n", Some(2)).is_err());
    }

    #[test]
    fn round_trip_is_numerically_exact() {
        let text = "+1 1:0.1 7:-3.25e-7\n-1 2:12345.678901234567\n";
        let first = parse_svmlight(text).unwrap();
        let second = parse_svmlight(&first.to_svmlight()).unwrap();
        assert_eq!(first, second);
    }

    proptest! {
        #[test]
        fn round_trip_random_datasets(
            rows in proptest::collection::vec(
                (
                    proptest::bool::ANY,
                    proptest::collection::btree_map(1usize..40, -1e6..1e6f64, 1..8),
                ),
                1..20,
            )
        ) {
            let mut text = String::new();
            for (pos, feats) in &rows {
                text.push_str(if *pos { "+1" } else { "-1" });
                for (i, v) in feats {
                    text.push_str(&format!(" {i}:{v}"));
                }
                text.push('\n');
            }
            let parsed = parse_svmlight(&text).unwrap();
            let reparsed = parse_svmlight(&parsed.to_svmlight()).unwrap();
            prop_assert_eq!(parsed, reparsed);
        }
    }
}
