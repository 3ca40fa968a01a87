//! Biadjacency matrices with labelled row and column blocks.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::EvenGraph;
use crate::numeric::OddSetKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LayoutRule {
    /// Rows `Y` and columns `X`, each ascending, as a single block.
    Natural,
    /// For `G(p, n)`: the multiples of `p` first, then one block per residue
    /// pair `{r, p-r}` with residue `r` descending followed by `p-r` ascending.
    ResidueBlocks,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub label: String,
    pub start: usize,
    pub len: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiadjacencyLayout {
    /// `Y` vertices (`≡ 2 mod 4`).
    pub rows: Vec<u64>,
    /// `X` vertices (`≡ 0 mod 4`).
    pub cols: Vec<u64>,
    pub matrix: Vec<Vec<u8>>,
    pub row_blocks: Vec<Block>,
    pub col_blocks: Vec<Block>,
}

fn residue_order(vertices: &[u64], p: u64) -> (Vec<u64>, Vec<Block>) {
    let mut order = Vec::with_capacity(vertices.len());
    let mut blocks = Vec::new();
    let mut push_block = |label: String, members: Vec<u64>, order: &mut Vec<u64>| {
        blocks.push(Block {
            label,
            start: order.len(),
            len: members.len(),
        });
        order.extend(members);
    };
    let zero: Vec<u64> = vertices.iter().copied().filter(|v| v % p == 0).collect();
    push_block("0".into(), zero, &mut order);
    for r in 1..=(p - 1) / 2 {
        let mut members: Vec<u64> = vertices.iter().copied().filter(|v| v % p == r).rev().collect();
        members.extend(vertices.iter().copied().filter(|v| v % p == p - r));
        push_block(format!("{r},{}", p - r), members, &mut order);
    }
    (order, blocks)
}

pub fn biadjacency(graph: &EvenGraph, rule: LayoutRule) -> Result<BiadjacencyLayout> {
    if graph.spec().include_zero() {
        return Err(Error::Layout("vertex 0 breaks the mod-4 bipartition".into()));
    }
    let (x, y) = graph.partite_sets();
    let (rows, row_blocks, cols, col_blocks) = match rule {
        LayoutRule::Natural => {
            let rb = vec![Block { label: "Y".into(), start: 0, len: y.len() }];
            let cb = vec![Block { label: "X".into(), start: 0, len: x.len() }];
            (y, rb, x, cb)
        }
        LayoutRule::ResidueBlocks => {
            let OddSetKind::PrimeMultipleMissing(p) = *graph.spec().kind() else {
                return Err(Error::Layout(format!(
                    "no residue block layout for {}",
                    graph.spec().kind()
                )));
            };
            let (rows, rb) = residue_order(&y, p);
            let (cols, cb) = residue_order(&x, p);
            (rows, rb, cols, cb)
        }
    };
    let matrix = rows
        .iter()
        .map(|&r| cols.iter().map(|&c| u8::from(graph.has_edge(r, c))).collect())
        .collect();
    Ok(BiadjacencyLayout {
        rows,
        cols,
        matrix,
        row_blocks,
        col_blocks,
    })
}

impl BiadjacencyLayout {
    pub fn block(&self, bi: usize, bj: usize) -> Vec<Vec<u8>> {
        let (r, c) = (&self.row_blocks[bi], &self.col_blocks[bj]);
        self.matrix[r.start..r.start + r.len]
            .iter()
            .map(|row| row[c.start..c.start + c.len].to_vec())
            .collect()
    }

    pub fn row_sums(&self) -> Vec<usize> {
        self.matrix.iter().map(|row| row.iter().map(|&b| b as usize).sum()).collect()
    }

    /// Checks the block form of a residue layout: the multiples block is zero,
    /// each diagonal path block is a path matrix, everything else is all ones.
    pub fn check_block_form(&self) -> Result<()> {
        if self.row_blocks.len() != self.col_blocks.len() {
            return Err(Error::Layout("row and column blocks differ in number".into()));
        }
        for bi in 0..self.row_blocks.len() {
            for bj in 0..self.col_blocks.len() {
                let block = self.block(bi, bj);
                let cells = || block.iter().flatten();
                let ok = if bi == 0 && bj == 0 {
                    cells().all(|&b| b == 0)
                } else if bi == bj {
                    is_path_matrix(&block)
                } else {
                    cells().all(|&b| b == 1)
                };
                if !ok {
                    return Err(Error::Consistency(format!(
                        "block ({}, {}) has the wrong pattern",
                        self.row_blocks[bi].label, self.col_blocks[bj].label
                    )));
                }
            }
        }
        Ok(())
    }

    /// Plain text: a header of column vertices, then one line per row vertex.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> = self.cols.iter().map(u64::to_string).collect();
        let _ = writeln!(out, ",{}", header.join(","));
        for (r, row) in self.rows.iter().zip(&self.matrix) {
            let cells: Vec<String> = row.iter().map(u8::to_string).collect();
            let _ = writeln!(out, "{r},{}", cells.join(","));
        }
        out
    }
}

/// Whether the 1-entries of `block` are the biadjacency of a path whose
/// vertices alternate between rows and columns in the given order.
pub fn is_path_matrix(block: &[Vec<u8>]) -> bool {
    let k = block.len();
    let l = block.first().map_or(0, Vec::len);
    if k + l == 0 {
        return true;
    }
    if k.abs_diff(l) > 1 || block.iter().any(|row| row.len() != l) {
        return false;
    }
    let ones: usize = block.iter().flatten().map(|&b| b as usize).sum();
    if ones != k + l - 1 {
        return false;
    }
    let fits = |offset: isize| {
        block.iter().enumerate().all(|(i, row)| {
            row.iter().enumerate().all(|(j, &b)| {
                let d = j as isize - i as isize;
                (b == 1) == (d == 0 || d == offset)
            })
        })
    };
    fits(1) || fits(-1)
}
