use crate::model::Network;

/// Connected components, strongly connected components and terminal classes.
///
/// All vertex lists are ascending and lists of lists are sorted by their
/// smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentDecomposition {
    pub components: Vec<Vec<usize>>,
    pub strong_components: Vec<Vec<usize>>,
    pub terminal_sccs: Vec<Vec<usize>>,
    pub weakly_reversible: bool,
}

impl ComponentDecomposition {
    /// Number of connected components `l`.
    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    /// Number of terminal strong components `t`.
    pub fn num_terminal(&self) -> usize {
        self.terminal_sccs.len()
    }
}

fn adjacency(net: &Network) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); net.num_vertices()];
    for e in net.edges() {
        adj[e.source].push(e.target);
    }
    adj
}

fn find(parent: &mut [usize], i: usize) -> usize {
    let mut root = i;
    while parent[root] != root {
        root = parent[root];
    }
    let mut cur = i;
    while parent[cur] != root {
        let next = parent[cur];
        parent[cur] = root;
        cur = next;
    }
    root
}

fn group(labels: &[usize]) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; labels.len()];
    for (v, &l) in labels.iter().enumerate() {
        if slot[l] == usize::MAX {
            slot[l] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[l]].push(v);
    }
    groups
}

struct Tarjan<'a> {
    adj: &'a [Vec<usize>],
    index: Vec<Option<usize>>,
    low: Vec<usize>,
    on_stack: Vec<bool>,
    stack: Vec<usize>,
    next: usize,
    comp: Vec<usize>,
    ncomp: usize,
}

impl Tarjan<'_> {
    fn visit(&mut self, v: usize) {
        self.index[v] = Some(self.next);
        self.low[v] = self.next;
        self.next += 1;
        self.stack.push(v);
        self.on_stack[v] = true;
        for &w in &self.adj[v] {
            match self.index[w] {
                None => {
                    self.visit(w);
                    self.low[v] = self.low[v].min(self.low[w]);
                }
                Some(iw) if self.on_stack[w] => self.low[v] = self.low[v].min(iw),
                Some(_) => {}
            }
        }
        if Some(self.low[v]) == self.index[v] {
            loop {
                let w = self.stack.pop().expect("stack holds v");
                self.on_stack[w] = false;
                self.comp[w] = self.ncomp;
                if w == v {
                    break;
                }
            }
            self.ncomp += 1;
        }
    }
}

/// Strongly connected component label of every vertex (Tarjan).
pub fn scc_labels(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut t = Tarjan {
        adj,
        index: vec![None; n],
        low: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        next: 0,
        comp: vec![0; n],
        ncomp: 0,
    };
    for v in 0..n {
        if t.index[v].is_none() {
            t.visit(v);
        }
    }
    t.comp
}

pub fn decompose(net: &Network) -> ComponentDecomposition {
    let m = net.num_vertices();
    let adj = adjacency(net);

    let mut parent: Vec<usize> = (0..m).collect();
    for e in net.edges() {
        let (a, b) = (find(&mut parent, e.source), find(&mut parent, e.target));
        parent[a] = b;
    }
    let roots: Vec<usize> = (0..m).map(|v| find(&mut parent, v)).collect();
    let components = group(&roots);

    let scc = scc_labels(&adj);
    let strong_components = group(&scc);
    let terminal_sccs = strong_components
        .iter()
        .filter(|c| {
            c.iter()
                .all(|&v| adj[v].iter().all(|&w| scc[w] == scc[v]))
        })
        .cloned()
        .collect();
    let weakly_reversible = strong_components.len() == components.len();
    ComponentDecomposition {
        components,
        strong_components,
        terminal_sccs,
        weakly_reversible,
    }
}
