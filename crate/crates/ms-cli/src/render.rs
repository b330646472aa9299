//! Text renderings: the per-row matrix layout (gaps as `*`) and plain
//! PBM bitmaps of the adjacency matrix.

use mutual_search::generators::RowLayout;
use mutual_search::tournament::Tournament;

/// Rows as `"i: t1 t2 ..."` lines, one site per line, single spaces, no
/// trailing whitespace.
pub fn matrix_of_rows(rows: &[Vec<usize>]) -> String {
    let mut out = String::new();
    for (i, row) in rows.iter().enumerate() {
        out.push_str(&format!("{i}:"));
        for t in row {
            out.push_str(&format!(" {t}"));
        }
        out.push('\n');
    }
    out
}

/// Like [`matrix_of_rows`] but with unfilled slots shown as `*`.
pub fn matrix_of_layout(layout: &RowLayout) -> String {
    let mut out = String::new();
    for (i, row) in layout.rows().iter().enumerate() {
        out.push_str(&format!("{i}:"));
        for cell in row {
            match cell {
                Some(t) => out.push_str(&format!(" {t}")),
                None => out.push_str(" *"),
            }
        }
        out.push('\n');
    }
    out
}

/// Plain (P1) PBM bitmap: bit at row `i`, column `j` is set iff the
/// edge `i -> j` exists.
pub fn pbm_of_tournament(t: &Tournament) -> String {
    let n = t.sites();
    let mut out = format!("P1\n{n} {n}\n");
    for i in 0..n {
        let row: Vec<&str> = (0..n)
            .map(|j| if i != j && t.has_edge(i, j) { "1" } else { "0" })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use mutual_search::generators::{half_in_turn, smooth_retiring};

    #[test]
    fn half_in_turn_5_matches_display() {
        let rows = half_in_turn(5).unwrap().rows();
        assert_eq!(
            matrix_of_rows(&rows),
            "0: 1 2\n1: 2 3\n2: 3 4\n3: 4 0\n4: 0 1\n"
        );
    }

    #[test]
    fn empty_rows_render_bare_labels() {
        let rows = vec![vec![1], vec![]];
        assert_eq!(matrix_of_rows(&rows), "0: 1\n1:\n");
    }

    #[test]
    fn pbm_counts_every_edge_once() {
        let (t, _) = smooth_retiring(14).unwrap();
        let pbm = pbm_of_tournament(&t);
        assert!(pbm.starts_with("P1\n14 14\n"));
        let body = pbm.splitn(3, '\n').nth(2).unwrap();
        assert_eq!(body.matches('1').count(), 91);
    }

    #[test]
    fn pbm_two_sites() {
        let (t, _) = smooth_retiring(2).unwrap();
        assert_eq!(pbm_of_tournament(&t), "P1\n2 2\n0 1\n0 0\n");
    }
}
