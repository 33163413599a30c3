#![allow(dead_code)]

use std::path::PathBuf;

use lrcpir::gf::{binary_field, Field};
use lrcpir::lrc::{parity_splitting, LrcCode};

pub fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

/// Parameters of one parity-splitting instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Params {
    pub m: u32,
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub delta: usize,
    pub local_codes: usize,
    pub remainder: usize,
}

impl Params {
    pub fn parent_length(&self) -> usize {
        self.n - (self.local_codes - 1) * (self.delta - 1)
    }

    pub fn field(&self) -> Field {
        binary_field(self.m).unwrap()
    }

    pub fn build(&self) -> LrcCode {
        parity_splitting(&self.field(), self.parent_length(), self.k, self.r, self.delta)
            .unwrap_or_else(|e| panic!("{self:?}: {e}"))
    }
}

/// r in 1..=3, delta in 2..=3, L_c in 1..=3, L >= L_c, n = L n_c + r̄ with
/// r̄ in 0..=2 (r̄ < n_c) and n <= 15, over GF(16) and GF(32).
pub fn corpus() -> Vec<Params> {
    let mut out = Vec::new();
    for m in [4, 5] {
        for r in 1..=3 {
            for delta in 2..=3 {
                let nc = r + delta - 1;
                for lc in 1..=3 {
                    for l in lc.. {
                        if l * nc > 15 {
                            break;
                        }
                        for rbar in (0..=2).filter(|&x| x < nc) {
                            let n = l * nc + rbar;
                            if n > 15 {
                                continue;
                            }
                            let p = Params { m, n, k: lc * r, r, delta, local_codes: lc, remainder: rbar };
                            if p.parent_length() <= 1 << m {
                                out.push(p);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}
