//! Path-first DFS shared by certificate construction and rebuilding.

use super::NIL;

/// DFS tree over a local vertex space `0..k` whose first branch is a
/// path from `start` to `goal`.
pub(super) struct Layout {
    pub preorder: Vec<usize>,
    pub parent: Vec<usize>,
    /// Path child first, then the rest in discovery order.
    pub children: Vec<Vec<usize>>,
    pub depth: Vec<usize>,
    /// `(far, via)` pairs in preorder of `far`.
    pub lb: Vec<Vec<(usize, usize)>>,
    /// Deepest ancestor first.
    pub ab: Vec<Vec<usize>>,
    pub path: Vec<usize>,
    /// Vertex and edge touches.
    pub work: u64,
}

impl Layout {
    fn empty(k: usize) -> Self {
        Layout {
            preorder: Vec::new(),
            parent: vec![NIL; k],
            children: vec![Vec::new(); k],
            depth: vec![0; k],
            lb: vec![Vec::new(); k],
            ab: Vec::new(),
            path: Vec::new(),
            work: 0,
        }
    }

    /// `stack[d]` is the ancestor of `x` at depth `d`. Every visited
    /// neighbor of a newly discovered vertex is an ancestor.
    fn discover(&mut self, x: usize, p: usize, adj: &[usize], visited: &mut [bool], stack: &mut Vec<(usize, usize)>) {
        visited[x] = true;
        self.parent[x] = p;
        if p != NIL {
            self.depth[x] = self.depth[p] + 1;
            self.children[p].push(x);
        }
        for &w in adj {
            self.work += 1;
            if visited[w] && w != p && w != x {
                let via = stack[self.depth[w] + 1].0;
                self.lb[w].push((x, via));
            }
        }
        self.preorder.push(x);
        stack.push((x, 0));
    }
}

/// Returns `None` if `goal` is not reachable from `start`.
pub(super) fn layout<'a, F>(k: usize, adj: F, start: usize, goal: usize) -> Option<Layout>
where
    F: Fn(usize) -> &'a [usize],
{
    let mut out = Layout::empty(k);
    out.path = find_path(k, &adj, start, goal, &mut out.work)?;

    let mut visited = vec![false; k];
    let mut stack: Vec<(usize, usize)> = Vec::new();
    let path = std::mem::take(&mut out.path);
    for (i, &x) in path.iter().enumerate() {
        let p = if i == 0 { NIL } else { path[i - 1] };
        out.discover(x, p, adj(x), &mut visited, &mut stack);
    }
    out.path = path;
    while let Some(top) = stack.last_mut() {
        let v = top.0;
        match adj(v).get(top.1) {
            Some(&w) => {
                top.1 += 1;
                out.work += 1;
                if !visited[w] {
                    out.discover(w, v, adj(w), &mut visited, &mut stack);
                }
            }
            None => {
                stack.pop();
            }
        }
    }

    let mut ab: Vec<Vec<usize>> = vec![Vec::new(); k];
    for &a in &out.preorder {
        for &(far, _) in &out.lb[a] {
            ab[far].push(a);
        }
    }
    for list in &mut ab {
        list.reverse();
    }
    out.ab = ab;
    out.work += out.preorder.len() as u64;
    Some(out)
}

fn find_path<'a, F>(k: usize, adj: &F, start: usize, goal: usize, work: &mut u64) -> Option<Vec<usize>>
where
    F: Fn(usize) -> &'a [usize],
{
    let mut pred = vec![NIL; k];
    pred[start] = start;
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        *work += 1;
        if v == goal {
            let mut path = vec![goal];
            let mut x = goal;
            while x != start {
                x = pred[x];
                path.push(x);
            }
            path.reverse();
            return Some(path);
        }
        for &w in adj(v) {
            *work += 1;
            if pred[w] == NIL {
                pred[w] = v;
                stack.push(w);
            }
        }
    }
    None
}
