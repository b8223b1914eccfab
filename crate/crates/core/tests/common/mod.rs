//! Independent oracles shared by the integration tests. Nothing here calls
//! the library's reduction, projection or normal-form code.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use petgraph::unionfind::UnionFind;
use proptest::prelude::*;
use rand::Rng;

use wildwords::becker::{GadgetGeometry, IntBranch, Point2, TreeDesc, Q};
use wildwords::word::{Letter, ReducedWord, Sign, Word};

pub fn letter(index: u32, inverse: bool) -> Letter {
    if inverse {
        Letter::neg(index)
    } else {
        Letter::pos(index)
    }
}

pub fn cancels(a: Letter, b: Letter) -> bool {
    a.index() == b.index() && a.sign != b.sign
}

/// Deletes the leftmost cancelling pair until none is left. Quadratic on
/// purpose.
pub fn naive_reduce(letters: &[Letter]) -> Vec<Letter> {
    let mut w = letters.to_vec();
    while let Some(i) = (0..w.len().saturating_sub(1)).find(|&i| cancels(w[i], w[i + 1])) {
        w.drain(i..i + 2);
    }
    w
}

/// Deletes a uniformly chosen cancelling pair until none is left.
pub fn random_order_reduce<R: Rng>(rng: &mut R, letters: &[Letter]) -> Vec<Letter> {
    let mut w = letters.to_vec();
    loop {
        let spots: Vec<usize> = (0..w.len().saturating_sub(1))
            .filter(|&i| cancels(w[i], w[i + 1]))
            .collect();
        if spots.is_empty() {
            return w;
        }
        let i = spots[rng.gen_range(0..spots.len())];
        w.drain(i..i + 2);
    }
}

pub fn naive_project(letters: &[Letter], n: u32) -> Vec<Letter> {
    let kept: Vec<Letter> = letters.iter().copied().filter(|l| l.index() <= n).collect();
    naive_reduce(&kept)
}

pub fn naive_collapse(letters: &[Letter], n: u32) -> Vec<Letter> {
    let moved: Vec<Letter> = letters
        .iter()
        .map(|l| {
            if l.index() < n {
                letter(n, l.sign == Sign::Neg)
            } else {
                *l
            }
        })
        .collect();
    naive_reduce(&moved)
}

pub fn naive_count(letters: &[Letter], k: u32) -> usize {
    letters.iter().filter(|l| l.index() == k).count()
}

pub fn reduced(letters: &[Letter]) -> ReducedWord {
    ReducedWord::from_reduced(naive_reduce(letters)).expect("naive reduction is reduced")
}

pub fn random_letters<R: Rng>(rng: &mut R, gens: u32, max_len: usize) -> Vec<Letter> {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| letter(rng.gen_range(1..=gens), rng.gen_bool(0.5)))
        .collect()
}

pub fn random_word<R: Rng>(rng: &mut R, gens: u32, max_len: usize) -> Word {
    Word::new(random_letters(rng, gens, max_len))
}

pub fn letter_strategy(gens: u32) -> impl Strategy<Value = Letter> {
    (1..=gens, any::<bool>()).prop_map(|(i, inv)| letter(i, inv))
}

pub fn word_strategy(gens: u32, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(letter_strategy(gens), 0..=max_len).prop_map(Word::new)
}

pub fn reduced_strategy(gens: u32, max_len: usize) -> impl Strategy<Value = ReducedWord> {
    prop::collection::vec(letter_strategy(gens), 0..=max_len).prop_map(|l| reduced(&l))
}

/// Congruence closure for `F(E)` on a finite atom set, by brute force over
/// every word up to a length bound. Letters are `2 * atom + inverse`. Edges:
/// free cancellation `x x^-1`, relator deletion `x y^-1` / `x^-1 y` for
/// `x E y`, and substitution of a letter by an `E`-related one.
pub struct CongruenceOracle {
    atoms: usize,
    max_len: usize,
    offsets: Vec<usize>,
    class: Vec<u32>,
}

impl CongruenceOracle {
    /// `block[i]` is the block of atom `i`.
    pub fn new(block: &[usize], max_len: usize) -> CongruenceOracle {
        let atoms = block.len();
        let k = 2 * atoms;
        let mut offsets = vec![0usize];
        for len in 0..=max_len {
            offsets.push(offsets[len] + k.pow(len as u32));
        }
        let total = offsets[max_len + 1];
        let mut uf = UnionFind::<u32>::new(total);
        let related = |x: usize, y: usize| block[x] == block[y];
        let mut word = Vec::with_capacity(max_len);
        for len in 0..=max_len {
            for code in 0..k.pow(len as u32) {
                decode(code, len, k, &mut word);
                let me = (offsets[len] + code) as u32;
                for i in 0..len {
                    let (atom, inv) = (word[i] / 2, word[i] % 2);
                    for other in 0..atoms {
                        if other != atom && related(atom, other) {
                            let mut w2 = word.clone();
                            w2[i] = 2 * other + inv;
                            uf.union(me, (offsets[len] + encode(&w2, k)) as u32);
                        }
                    }
                    if i + 1 < len {
                        let (b_atom, b_inv) = (word[i + 1] / 2, word[i + 1] % 2);
                        if inv != b_inv && related(atom, b_atom) {
                            let mut w2 = word.clone();
                            w2.drain(i..i + 2);
                            uf.union(me, (offsets[len - 2] + encode(&w2, k)) as u32);
                        }
                    }
                }
            }
        }
        let class = (0..total as u32).map(|i| uf.find_mut(i)).collect();
        CongruenceOracle {
            atoms,
            max_len,
            offsets,
            class,
        }
    }

    pub fn class_of(&self, word: &[usize]) -> u32 {
        assert!(word.len() <= self.max_len);
        self.class[self.offsets[word.len()] + encode(word, 2 * self.atoms)]
    }

    /// All words of exactly `len` letters.
    pub fn words(&self, len: usize) -> impl Iterator<Item = Vec<usize>> + '_ {
        let k = 2 * self.atoms;
        (0..k.pow(len as u32)).map(move |code| {
            let mut w = Vec::new();
            decode(code, len, k, &mut w);
            w
        })
    }
}

fn encode(word: &[usize], k: usize) -> usize {
    word.iter().rev().fold(0, |acc, &d| acc * k + d)
}

fn decode(mut code: usize, len: usize, k: usize, out: &mut Vec<usize>) {
    out.clear();
    for _ in 0..len {
        out.push(code % k);
        code /= k;
    }
}

/// Transitive closure of a symmetric relation given as a matrix.
pub fn transitive_closure(mut m: Vec<Vec<bool>>) -> Vec<Vec<bool>> {
    let n = m.len();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = true;
    }
    for k in 0..n {
        let via = m[k].clone();
        for row in m.iter_mut() {
            if row[k] {
                for (cell, &reach) in row.iter_mut().zip(&via) {
                    *cell |= reach;
                }
            }
        }
    }
    m
}

pub fn bit_strings(len: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    for _ in 0..len {
        out = out
            .iter()
            .flat_map(|s| [format!("{s}0"), format!("{s}1")])
            .collect();
    }
    out
}

fn orient(a: &Point2, b: &Point2, c: &Point2) -> Q {
    (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x)
}

fn within(a: &Point2, b: &Point2, p: &Point2) -> bool {
    let (lx, hx) = if a.x <= b.x {
        (&a.x, &b.x)
    } else {
        (&b.x, &a.x)
    };
    let (ly, hy) = if a.y <= b.y {
        (&a.y, &b.y)
    } else {
        (&b.y, &a.y)
    };
    lx <= &p.x && &p.x <= hx && ly <= &p.y && &p.y <= hy
}

pub fn on_segment(p: &Point2, a: &Point2, b: &Point2) -> bool {
    orient(a, b, p).is_zero() && within(a, b, p)
}

/// Closed 2D segments meet (orientation test).
pub fn segments_meet(a: &Point2, b: &Point2, c: &Point2, d: &Point2) -> bool {
    let sign = |v: Q| {
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    };
    let (o1, o2) = (sign(orient(a, b, c)), sign(orient(a, b, d)));
    let (o3, o4) = (sign(orient(c, d, a)), sign(orient(c, d, b)));
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    (o1 == 0 && within(a, b, c))
        || (o2 == 0 && within(a, b, d))
        || (o3 == 0 && within(c, d, a))
        || (o4 == 0 && within(c, d, b))
}

/// Clusters of the drawn primitives under exact incidence, reported as the
/// cluster of every marked point.
pub fn drawn_clusters(g: &GadgetGeometry) -> (usize, BTreeMap<String, usize>) {
    let mut pieces: Vec<(Point2, Point2)> = g
        .segments
        .iter()
        .map(|s| (s.from.clone(), s.to.clone()))
        .collect();
    for p in &g.polylines {
        pieces.extend(p.vertices.windows(2).map(|w| (w[0].clone(), w[1].clone())));
    }
    let mut uf = UnionFind::<usize>::new(pieces.len());
    for i in 0..pieces.len() {
        for j in i + 1..pieces.len() {
            if segments_meet(&pieces[i].0, &pieces[i].1, &pieces[j].0, &pieces[j].1) {
                uf.union(i, j);
            }
        }
    }
    let mut roots: Vec<usize> = (0..pieces.len()).map(|i| uf.find_mut(i)).collect();
    let mut distinct = roots.clone();
    distinct.sort();
    distinct.dedup();
    for r in roots.iter_mut() {
        *r = distinct.binary_search(r).expect("root listed");
    }
    let mut marked = BTreeMap::new();
    for (label, p) in &g.marked_points {
        let hit = pieces
            .iter()
            .position(|(a, b)| on_segment(p, a, b))
            .unwrap_or_else(|| panic!("marked point {label} lies on no primitive"));
        marked.insert(label.clone(), roots[hit]);
    }
    (distinct.len(), marked)
}

/// Twenty trees of varying shape; `true` marks the ones with a designated
/// branch.
pub fn fixture_trees() -> Vec<(TreeDesc, bool)> {
    let t = |nodes: Vec<Vec<u32>>, branches: Vec<IntBranch>| {
        let has = !branches.is_empty();
        (
            TreeDesc::new(nodes, branches).expect("fixture tree is valid"),
            has,
        )
    };
    let chain = |n: usize, v: u32| (1..=n).map(|k| vec![v; k]).collect::<Vec<_>>();
    let mut out = vec![
        t(vec![], vec![]),
        t(vec![vec![0]], vec![]),
        t(vec![vec![0]], vec![IntBranch::constant(0)]),
        t(vec![vec![0], vec![1], vec![2]], vec![]),
        t(
            vec![vec![0], vec![1], vec![2]],
            vec![IntBranch::constant(1)],
        ),
        t(chain(4, 0), vec![]),
        t(chain(4, 0), vec![IntBranch::constant(0)]),
        t(chain(3, 1), vec![IntBranch::constant(1)]),
        t(
            vec![vec![0], vec![0, 1], vec![2]],
            vec![IntBranch {
                prefix: vec![0],
                period: vec![1],
            }],
        ),
        t(vec![vec![0], vec![0, 1], vec![2]], vec![]),
        t(
            vec![
                vec![0],
                vec![1],
                vec![0, 0],
                vec![0, 1],
                vec![1, 0],
                vec![1, 1],
            ],
            vec![],
        ),
        t(
            vec![
                vec![0],
                vec![1],
                vec![0, 0],
                vec![0, 1],
                vec![1, 0],
                vec![1, 1],
            ],
            vec![IntBranch::constant(0), IntBranch::constant(1)],
        ),
        t(
            vec![vec![0], vec![0, 0], vec![0, 0, 0], vec![1], vec![1, 2]],
            vec![],
        ),
        t(vec![vec![3]], vec![]),
        t(vec![vec![3]], vec![IntBranch::constant(3)]),
        t(
            vec![vec![0], vec![0, 1], vec![0, 1, 0], vec![0, 1, 0, 1]],
            vec![IntBranch {
                prefix: vec![],
                period: vec![0, 1],
            }],
        ),
        t(
            vec![vec![0], vec![0, 1], vec![0, 1, 0], vec![0, 1, 0, 1]],
            vec![],
        ),
        t(
            vec![vec![1], vec![1, 1], vec![1, 1, 2], vec![2], vec![2, 0]],
            vec![],
        ),
        t(
            vec![vec![2], vec![2, 0], vec![2, 0, 0], vec![0]],
            vec![IntBranch {
                prefix: vec![2],
                period: vec![0],
            }],
        ),
    ];
    out.push(t(chain(6, 0), vec![]));
    out
}

/// Writes the CLI fixture files into `dir` and returns one argument vector
/// per documented command (without the program name).
pub fn cli_fixtures(dir: &std::path::Path) -> Vec<Vec<String>> {
    let write = |name: &str, body: &str| {
        let path = dir.join(name);
        std::fs::write(&path, body).expect("fixture written");
        path.display().to_string()
    };
    let rel = write(
        "rel.json",
        r#"{"variant":"finite-partition","blocks":[["a","b"],["c"]]}"#,
    );
    let bits = write(
        "bits.json",
        r#"{"variant":"finite-partition","blocks":[["00","11"],["01"],["10"]]}"#,
    );
    let tree = write(
        "tree.json",
        r#"{"nodes":[[0],[0,1],[2]],"branches":[{"prefix":[0],"period":[1]}]}"#,
    );
    let bare = write("bare.json", r#"{"nodes":[[0],[1],[1,0]]}"#);
    let seq = write(
        "seq.json",
        r#"{"depth":3,"levels":["e","[g2,g1]","[g2,g1] [g3,g1]"]}"#,
    );
    let vec = write("vec.json", r#"{"prefixes":["01","1"]}"#);
    let svg = dir.join("gadget.svg").display().to_string();
    let seq = format!("@{seq}");
    let cmds: Vec<Vec<&str>> = vec![
        vec!["reduce", "g1 g2 g2~"],
        vec!["reduce", "[g1,g2] (g3 g1)~"],
        vec!["project", "--level", "2", "g1 g3 g2"],
        vec!["earring", "check", "--depth", "6", "--word", "g2 g1~ g3"],
        vec!["earring", "check", &seq],
        vec!["ha", "kernel", "--depth", "5", "--word", "g1 g2~"],
        vec!["ha", "kernel", "--depth", "5", "--word", "g1"],
        vec!["ha", "equiv", "--depth", "4", "g1", "g2"],
        vec!["ha", "eta", "--depth", "12", &vec],
        vec!["fe", "normal", "--relation", &rel, "'a' 'b'~ 'c'"],
        vec!["fe", "eq", "--relation", &rel, "'a' 'c'", "'b' 'c'"],
        vec!["fe", "quotient", "--relation", &rel, "'b' 'c' 'a'~"],
        vec!["becker", "gadget", "--tree", &tree, "--depth", "4"],
        vec!["becker", "gadget", "--tree", &bare, "--depth", "3"],
        vec!["becker", "assembly", "--relation", &bits, "--depth", "4"],
        vec![
            "becker",
            "connect",
            "--relation",
            &bits,
            "--depth",
            "4",
            "00",
            "11",
        ],
        vec![
            "becker", "svg", "--tree", &tree, "--depth", "5", "--svg", &svg,
        ],
        vec!["becker", "svg", "--tree", &bare, "--depth", "2"],
        vec!["selftest", "--seed", "11", "--cases", "50"],
    ];
    cmds.into_iter()
        .map(|c| c.into_iter().map(str::to_string).collect())
        .collect()
}
