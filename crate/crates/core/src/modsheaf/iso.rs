//! Isomorphism search for finite sets carrying labelled partial unary maps,
//! used for `A`-sets (generator actions) and module sheaves (actions on each
//! stalk plus restrictions between stalks).

use std::collections::BTreeMap;

/// Nodes `0..len`, each in a block that an isomorphism must preserve, and a
/// list of partial maps. Two structures are compared op by op, in order.
pub(crate) struct Structure {
    pub blocks: Vec<usize>,
    pub ops: Vec<Vec<Option<usize>>>,
}

impl Structure {
    fn len(&self) -> usize {
        self.blocks.len()
    }

    fn preimages(&self) -> Vec<Vec<Vec<usize>>> {
        self.ops
            .iter()
            .map(|op| {
                let mut pre = vec![Vec::new(); self.len()];
                for (x, y) in op.iter().enumerate() {
                    if let Some(y) = y {
                        pre[*y].push(x);
                    }
                }
                pre
            })
            .collect()
    }
}

type Signature = (usize, Vec<Option<usize>>, Vec<Vec<usize>>);

fn signature(s: &Structure, pre: &[Vec<Vec<usize>>], colors: &[usize], x: usize) -> Signature {
    let out = s.ops.iter().map(|op| op[x].map(|y| colors[y])).collect();
    let inc = pre
        .iter()
        .map(|p| {
            let mut c: Vec<usize> = p[x].iter().map(|&y| colors[y]).collect();
            c.sort_unstable();
            c
        })
        .collect();
    (colors[x], out, inc)
}

/// Colour refinement run on both structures with a shared palette.
fn refine(a: &Structure, b: &Structure) -> (Vec<usize>, Vec<usize>) {
    let (pa, pb) = (a.preimages(), b.preimages());
    let mut ca = a.blocks.clone();
    let mut cb = b.blocks.clone();
    let mut classes = 0;
    loop {
        let mut palette: BTreeMap<Signature, usize> = BTreeMap::new();
        let sa: Vec<Signature> = (0..a.len()).map(|x| signature(a, &pa, &ca, x)).collect();
        let sb: Vec<Signature> = (0..b.len()).map(|x| signature(b, &pb, &cb, x)).collect();
        for s in sa.iter().chain(&sb) {
            let n = palette.len();
            palette.entry(s.clone()).or_insert(n);
        }
        ca = sa.iter().map(|s| palette[s]).collect();
        cb = sb.iter().map(|s| palette[s]).collect();
        if palette.len() == classes {
            return (ca, cb);
        }
        classes = palette.len();
    }
}

struct Search<'a> {
    a: &'a Structure,
    b: &'a Structure,
    pre_a: Vec<Vec<Vec<usize>>>,
    ca: Vec<usize>,
    cb: Vec<usize>,
    order: Vec<usize>,
    map: Vec<Option<usize>>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn consistent(&self, x: usize) -> bool {
        let fx = self.map[x].expect("assigned");
        for (k, op) in self.a.ops.iter().enumerate() {
            let opb = &self.b.ops[k];
            if let Some(y) = op[x] {
                if let Some(fy) = self.map[y] {
                    if opb[fx] != Some(fy) {
                        return false;
                    }
                }
            } else if opb[fx].is_some() {
                return false;
            }
            for &w in &self.pre_a[k][x] {
                if let Some(fw) = self.map[w] {
                    if opb[fw] != Some(fx) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, i: usize) -> bool {
        if i == self.order.len() {
            return true;
        }
        let x = self.order[i];
        for y in 0..self.b.len() {
            if self.used[y] || self.cb[y] != self.ca[x] {
                continue;
            }
            self.map[x] = Some(y);
            self.used[y] = true;
            if self.consistent(x) && self.run(i + 1) {
                return true;
            }
            self.used[y] = false;
        }
        self.map[x] = None;
        false
    }
}

/// A bijection `a → b` preserving blocks and commuting with every op.
pub(crate) fn isomorphism(a: &Structure, b: &Structure) -> Option<Vec<usize>> {
    if a.len() != b.len() || a.ops.len() != b.ops.len() {
        return None;
    }
    let (ca, cb) = refine(a, b);
    let mut ha = ca.clone();
    let mut hb = cb.clone();
    ha.sort_unstable();
    hb.sort_unstable();
    if ha != hb {
        return None;
    }
    // breadth first along the ops so that constraints bite early
    let pre_a = a.preimages();
    let mut order = Vec::with_capacity(a.len());
    let mut seen = vec![false; a.len()];
    for start in 0..a.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut head = order.len();
        order.push(start);
        while head < order.len() {
            let x = order[head];
            head += 1;
            let next = a
                .ops
                .iter()
                .filter_map(|op| op[x])
                .chain(pre_a.iter().flat_map(|p| p[x].iter().copied()));
            for y in next.collect::<Vec<_>>() {
                if !seen[y] {
                    seen[y] = true;
                    order.push(y);
                }
            }
        }
    }
    let mut s = Search {
        a,
        b,
        pre_a,
        ca,
        cb,
        order,
        map: vec![None; a.len()],
        used: vec![false; a.len()],
    };
    if s.run(0) {
        Some(s.map.into_iter().map(|y| y.expect("complete")).collect())
    } else {
        None
    }
}
