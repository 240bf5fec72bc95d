//! Reader and writer for the alist sparse-matrix exchange format.
//!
//! The dialect accepted here is the common one: a `N M` header, the maximum
//! column/row degrees, per-column and per-row degree lists, then one
//! neighbor list per column and per row with 1-based indices. Entries equal
//! to 0 are padding and are skipped.

use super::{CodeError, TannerGraph};

fn parse_err(line: usize, msg: impl Into<String>) -> CodeError {
    CodeError::Parse {
        line,
        msg: msg.into(),
    }
}

/// A non-empty line with its 1-based position in the input.
struct Line<'a> {
    number: usize,
    tokens: Vec<&'a str>,
}

fn tokenize(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, l)| {
            let tokens: Vec<&str> = l.split_whitespace().collect();
            if tokens.is_empty() {
                None
            } else {
                Some(Line {
                    number: i + 1,
                    tokens,
                })
            }
        })
        .collect()
}

fn parse_counts(line: &Line, expected: Option<usize>, what: &str) -> Result<Vec<usize>, CodeError> {
    if let Some(n) = expected {
        if line.tokens.len() != n {
            return Err(parse_err(
                line.number,
                format!("expected {n} {what} entries, found {}", line.tokens.len()),
            ));
        }
    }
    line.tokens
        .iter()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| parse_err(line.number, format!("invalid integer `{t}`")))
        })
        .collect()
}

/// Parses alist text into a [`TannerGraph`].
///
/// Both the column-side and row-side neighbor lists are read and checked
/// against each other; any inconsistency is reported with its line number.
pub fn parse_alist(text: &str) -> Result<TannerGraph, CodeError> {
    let lines = tokenize(text);
    let mut it = lines.iter();

    let header = it.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let header_vals = parse_counts(header, Some(2), "header")?;
    let (n, m) = (header_vals[0], header_vals[1]);
    if n == 0 || m == 0 {
        return Err(parse_err(header.number, "N and M must be positive"));
    }

    let max_line = it
        .next()
        .ok_or_else(|| parse_err(header.number, "missing max-degree line"))?;
    let max_vals = parse_counts(max_line, Some(2), "max-degree")?;
    let (max_dv, max_dc) = (max_vals[0], max_vals[1]);

    let col_deg_line = it
        .next()
        .ok_or_else(|| parse_err(max_line.number, "missing column-degree line"))?;
    let col_degrees = parse_counts(col_deg_line, Some(n), "column-degree")?;
    let row_deg_line = it
        .next()
        .ok_or_else(|| parse_err(col_deg_line.number, "missing row-degree line"))?;
    let row_degrees = parse_counts(row_deg_line, Some(m), "row-degree")?;

    for (i, &d) in col_degrees.iter().enumerate() {
        if d == 0 || d > max_dv {
            return Err(parse_err(
                col_deg_line.number,
                format!("column {} degree {d} outside 1..={max_dv}", i + 1),
            ));
        }
    }
    for (i, &d) in row_degrees.iter().enumerate() {
        if d == 0 || d > max_dc {
            return Err(parse_err(
                row_deg_line.number,
                format!("row {} degree {d} outside 1..={max_dc}", i + 1),
            ));
        }
    }

    let mut read_lists = |count: usize,
                          degrees: &[usize],
                          bound: usize,
                          side: &str|
     -> Result<Vec<Vec<usize>>, CodeError> {
        let mut lists = Vec::with_capacity(count);
        for (i, &degree) in degrees.iter().enumerate().take(count) {
            let line = it.next().ok_or_else(|| {
                parse_err(
                    row_deg_line.number,
                    format!("missing {side} list {} of {count}", i + 1),
                )
            })?;
            let entries = parse_counts(line, None, side)?;
            let mut neighbors: Vec<usize> = Vec::with_capacity(degree);
            for &e in &entries {
                if e == 0 {
                    continue; // padding
                }
                if e > bound {
                    return Err(parse_err(
                        line.number,
                        format!("{side} index {e} out of range 1..={bound}"),
                    ));
                }
                neighbors.push(e - 1);
            }
            if neighbors.len() != degree {
                return Err(parse_err(
                    line.number,
                    format!(
                        "{side} list {} has {} entries but declared degree {degree}",
                        i + 1,
                        neighbors.len()
                    ),
                ));
            }
            neighbors.sort_unstable();
            if neighbors.windows(2).any(|w| w[0] == w[1]) {
                return Err(parse_err(line.number, format!("duplicate {side} entry")));
            }
            lists.push(neighbors);
        }
        Ok(lists)
    };

    let vn_lists = read_lists(n, &col_degrees, m, "column")?;
    let cn_lists = read_lists(m, &row_degrees, n, "row")?;

    let graph = TannerGraph::from_vn_adjacency(m, vn_lists)?;
    // The row-side lists are redundant; require them to agree.
    for m_idx in 0..m {
        if graph.cn_neighbors(m_idx) != cn_lists[m_idx].as_slice() {
            return Err(CodeError::Parse {
                line: 0,
                msg: format!(
                    "row list for CN {} disagrees with the column lists",
                    m_idx + 1
                ),
            });
        }
    }
    Ok(graph)
}

/// Serializes a graph in canonical alist form: entries 1-based, each list
/// padded with zeros to the maximum degree.
pub fn write_alist(g: &TannerGraph) -> String {
    let max_dv = (0..g.n_vns())
        .map(|n| g.vn_neighbors(n).len())
        .max()
        .unwrap_or(0);
    let max_dc = (0..g.n_cns())
        .map(|m| g.cn_neighbors(m).len())
        .max()
        .unwrap_or(0);
    let mut out = String::new();
    out.push_str(&format!("{} {}\n", g.n_vns(), g.n_cns()));
    out.push_str(&format!("{max_dv} {max_dc}\n"));
    let degrees = |lists: Vec<&[usize]>| -> String {
        lists
            .iter()
            .map(|l| l.len().to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    out.push_str(&degrees((0..g.n_vns()).map(|n| g.vn_neighbors(n)).collect()));
    out.push('\n');
    out.push_str(&degrees((0..g.n_cns()).map(|m| g.cn_neighbors(m)).collect()));
    out.push('\n');
    let mut push_lists = |lists: Vec<&[usize]>, width: usize| {
        for l in lists {
            let mut entries: Vec<String> = l.iter().map(|&i| (i + 1).to_string()).collect();
            entries.resize(width, "0".to_string());
            out.push_str(&entries.join(" "));
            out.push('\n');
        }
    };
    push_lists((0..g.n_vns()).map(|n| g.vn_neighbors(n)).collect(), max_dv);
    push_lists((0..g.n_cns()).map(|m| g.cn_neighbors(m)).collect(), max_dc);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Alist of H = [[110100],[011010],[101001]].
    const TOY: &str = "6 3\n2 3\n2 2 2 1 1 1\n3 3 3\n1 3\n1 2\n2 3\n1 0\n2 0\n3 0\n1 2 4\n2 3 5\n1 3 6\n";

    #[test]
    fn parses_toy_matrix() {
        let g = parse_alist(TOY).unwrap();
        assert_eq!(g.n_vns(), 6);
        assert_eq!(g.n_cns(), 3);
        assert!(!g.is_regular());
        assert_eq!(g.vn_neighbors(0), &[0, 2]);
        assert_eq!(g.cn_neighbors(0), &[0, 1, 3]);
    }

    #[test]
    fn zero_padding_skipped() {
        // Declared degree 1 with a padded second entry.
        let text = "2 1\n1 2\n1 1\n2\n1 0\n1\n1 2\n";
        let g = parse_alist(text).unwrap();
        assert_eq!(g.vn_neighbors(0), &[0]);
    }

    #[test]
    fn wrong_column_degree_count_is_error() {
        // N=4 declared but 5 column-degree entries on line 3.
        let text = "4 2\n1 2\n1 1 1 1 1\n2 2\n1\n1\n2\n2\n1 2\n3 4\n";
        match parse_alist(text) {
            Err(CodeError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn out_of_range_index_is_error() {
        let text = "2 1\n1 2\n1 1\n2\n1\n5\n1 2\n";
        match parse_alist(text) {
            Err(CodeError::Parse { line, msg }) => {
                assert_eq!(line, 6);
                assert!(msg.contains("out of range"), "{msg}");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn degree_list_mismatch_is_error() {
        // Column 1 declares degree 2 but provides one entry plus padding.
        let text = "2 2\n2 2\n2 1\n2 1\n1 0\n2\n1 2\n1\n";
        match parse_alist(text) {
            Err(CodeError::Parse { line, .. }) => assert_eq!(line, 5),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn inconsistent_row_lists_rejected() {
        // Column lists say CN1 = {VN1}, but the row lists are swapped.
        let text = "2 2\n1 1\n1 1\n1 1\n1\n2\n2\n1\n";
        assert!(parse_alist(text).is_err());
    }

    #[test]
    fn round_trip_identity() {
        let g = parse_alist(TOY).unwrap();
        let text = write_alist(&g);
        let g2 = parse_alist(&text).unwrap();
        assert_eq!(g, g2);
        // Canonical writer output is a fixed point.
        assert_eq!(text, write_alist(&g2));
    }
}
