#![allow(dead_code)]

use proptest::prelude::*;
use walknet::{Graph, NodeId};

/// All-pairs hop distances; `None` for unreachable pairs.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<Option<usize>>> {
    let n = g.node_count();
    let mut d = vec![vec![None; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = Some(0);
    }
    for (u, v) in g.edges() {
        d[u.index()][v.index()] = Some(1);
        d[v.index()][u.index()] = Some(1);
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|c| a + b < c) {
                        d[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    d
}

fn adjacent(g: &Graph, a: usize, b: usize) -> bool {
    g.neighbors(NodeId(a as u32)).contains(&NodeId(b as u32))
}

/// (closed, total) neighbour pairs around `v`, enumerated over all node triples.
fn triples_at(g: &Graph, v: usize) -> (u64, u64) {
    let n = g.node_count();
    let (mut closed, mut total) = (0, 0);
    for a in 0..n {
        for b in a + 1..n {
            if a == v || b == v || !adjacent(g, v, a) || !adjacent(g, v, b) {
                continue;
            }
            total += 1;
            if adjacent(g, a, b) {
                closed += 1;
            }
        }
    }
    (closed, total)
}

pub fn brute_local_clustering(g: &Graph, v: usize) -> f64 {
    let (closed, total) = triples_at(g, v);
    if total == 0 {
        0.0
    } else {
        closed as f64 / total as f64
    }
}

pub fn brute_avg_clustering(g: &Graph) -> f64 {
    let n = g.node_count();
    (0..n).map(|v| brute_local_clustering(g, v)).sum::<f64>() / n as f64
}

pub fn brute_transitivity(g: &Graph) -> f64 {
    let (closed, total) = (0..g.node_count())
        .map(|v| triples_at(g, v))
        .fold((0, 0), |acc, t| (acc.0 + t.0, acc.1 + t.1));
    if total == 0 {
        0.0
    } else {
        closed as f64 / total as f64
    }
}

pub fn brute_aspl(g: &Graph) -> f64 {
    let d = floyd_warshall(g);
    let n = g.node_count();
    let sum: usize = d
        .iter()
        .enumerate()
        .flat_map(|(i, row)| row[i + 1..].iter())
        .map(|x| x.expect("connected graph"))
        .sum();
    sum as f64 / (n * (n - 1) / 2) as f64
}

/// Connected simple graphs on 2..=max_nodes nodes: a random tree plus random extra edges.
pub fn connected_graph(max_nodes: usize) -> impl Strategy<Value = Graph> {
    (2..=max_nodes).prop_flat_map(|n| {
        let parents: Vec<_> = (1..n).map(|i| 0..i).collect();
        let extra = proptest::collection::vec(any::<bool>(), n * (n - 1) / 2);
        (Just(n), parents, extra).prop_map(|(n, parents, extra)| {
            let mut g = Graph::with_nodes(n);
            for (i, p) in parents.into_iter().enumerate() {
                g.add_edge(NodeId(i as u32 + 1), NodeId(p as u32)).unwrap();
            }
            let mut k = 0;
            for a in 0..n {
                for b in a + 1..n {
                    if extra[k] {
                        g.add_edge(NodeId(a as u32), NodeId(b as u32)).unwrap();
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

/// Least-squares slope and coefficient of determination of y on x.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 {
        1.0
    } else {
        sxy * sxy / (sxx * syy)
    };
    (slope, r2)
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    Graph::from_edges(10, edges).unwrap()
}
