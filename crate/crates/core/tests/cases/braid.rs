// Closed-braid link diagrams. Strands run downward; `+i` crosses positions
// i and i+1 with the left strand over (a negative crossing), `-i` with the
// right strand over (positive).

use serde_json::{json, Value};

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

pub fn closure(width: usize, word: &[i32]) -> String {
    // Segment ids: 0..width start at the top, width + k starts under letter k.
    let n_seg = width + word.len();
    let mut parent: Vec<usize> = (0..n_seg).collect();
    let mut cur: Vec<usize> = (0..width).collect();
    let mut crossings = Vec::new();
    let mut under_at = vec![0usize; word.len()];
    for (k, &g) in word.iter().enumerate() {
        let i = g.unsigned_abs() as usize - 1;
        assert!(i + 1 < width, "generator {g} out of range");
        let (over, under, sign) = if g > 0 { (i, i + 1, -1) } else { (i + 1, i, 1) };
        crossings.push((cur[over], cur[under], width + k, sign));
        under_at[k] = under;
        cur[under] = width + k;
        cur.swap(i, i + 1);
    }
    for p in 0..width {
        let (a, b) = (find(&mut parent, cur[p]), find(&mut parent, p));
        parent[a] = b;
    }
    let mut name = |s: usize| format!("a{}", find(&mut parent, s));

    let mut seen = vec![false; width];
    let mut strands = Vec::new();
    for p0 in 0..width {
        if seen[p0] {
            continue;
        }
        let mut arcs = vec![name(p0)];
        let mut pos = p0;
        loop {
            seen[pos] = true;
            for (k, &g) in word.iter().enumerate() {
                let i = g.unsigned_abs() as usize - 1;
                if pos == i || pos == i + 1 {
                    if pos == under_at[k] {
                        arcs.push(name(width + k));
                    }
                    pos = if pos == i { i + 1 } else { i };
                }
            }
            if pos == p0 {
                break;
            }
        }
        if arcs.len() > 1 && arcs.last() == arcs.first() {
            arcs.pop();
        }
        strands.push(json!({"name": format!("K{}", strands.len() + 1), "arcs": arcs}));
    }
    let crossings: Vec<Value> = crossings
        .into_iter()
        .map(|(o, ui, uo, s)| json!({"over": name(o), "under_in": name(ui), "under_out": name(uo), "sign": s}))
        .collect();
    json!({"kind": "link", "strands": strands, "crossings": crossings}).to_string()
}
