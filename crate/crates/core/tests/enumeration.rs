//! Enumeration against a scan of the whole box `[0, s]^cells`, checking
//! every monotone staircase explicitly.

use kr_crystal::{enumerate_crystal, KRParams, KRPattern};

/// All corner-to-corner lattice paths through a `rows x cols` grid.
fn staircases(rows: usize, cols: usize) -> Vec<Vec<usize>> {
    fn walk(row: usize, col: usize, rows: usize, cols: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        path.push(row * cols + col);
        if row + 1 == rows && col + 1 == cols {
            out.push(path.clone());
        }
        if row + 1 < rows {
            walk(row + 1, col, rows, cols, path, out);
        }
        if col + 1 < cols {
            walk(row, col + 1, rows, cols, path, out);
        }
        path.pop();
    }
    let mut out = Vec::new();
    walk(0, 0, rows, cols, &mut Vec::new(), &mut out);
    out
}

fn scan(params: KRParams) -> Vec<KRPattern> {
    let paths = staircases(params.rows(), params.cols());
    let cells = params.cells();
    let base = params.s() + 1;
    let mut out = Vec::new();
    for code in 0..(base as u64).pow(cells as u32) {
        let mut rest = code;
        let mut grid = vec![0u32; cells];
        for cell in grid.iter_mut().rev() {
            *cell = (rest % base as u64) as u32;
            rest /= base as u64;
        }
        if paths
            .iter()
            .all(|p| p.iter().map(|&i| grid[i]).sum::<u32>() <= params.s())
        {
            out.push(KRPattern::from_cells(params, grid).unwrap());
        }
    }
    out
}

#[test]
fn enumeration_matches_box_scan() {
    for n in 1..=4 {
        for r in 1..=n {
            for s in 1..=3 {
                let params = KRParams::new(n, r, s).unwrap();
                if (s as u64 + 1).pow(params.cells() as u32) > 300_000 {
                    continue;
                }
                let mut expected = scan(params);
                expected.sort();
                let got = enumerate_crystal(params).unwrap();
                assert_eq!(got, expected, "{params}");
            }
        }
    }
}

#[test]
fn enumeration_is_sorted_and_distinct() {
    for n in 1..=4 {
        for r in 1..=n {
            let got = enumerate_crystal(KRParams::new(n, r, 3).unwrap()).unwrap();
            assert!(got.windows(2).all(|w| w[0] < w[1]));
        }
    }
}
