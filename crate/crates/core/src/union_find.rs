/// Union-find with union by size and an undo log, no path compression so
/// that rollback stays O(1) per undone union. Find is O(log n) which is
/// plenty at the sizes the solvers handle.
#[derive(Clone)]
pub(crate) struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
    // (absorbed root, size the surviving root had before the union)
    log: Vec<(u32, u32)>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
            log: Vec::new(),
        }
    }

    pub fn find(&self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            x = self.parent[x as usize];
        }
        x
    }

    /// Returns false if `a` and `b` were already in the same class.
    pub fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (big, small) = if self.size[ra as usize] >= self.size[rb as usize] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.log.push((small, self.size[big as usize]));
        self.parent[small as usize] = big;
        self.size[big as usize] += self.size[small as usize];
        true
    }

    #[cfg(test)]
    pub fn joined(&self, a: u32, b: u32) -> bool {
        self.find(a) == self.find(b)
    }

    /// Snapshot for a later `rollback`.
    pub fn mark(&self) -> usize {
        self.log.len()
    }

    pub fn rollback(&mut self, mark: usize) {
        while self.log.len() > mark {
            let (small, old_size) = self.log.pop().unwrap();
            let big = self.parent[small as usize];
            self.parent[small as usize] = small;
            self.size[big as usize] = old_size;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_and_rollback() {
        let mut uf = UnionFind::new(5);
        assert!(uf.union(0, 1));
        let mark = uf.mark();
        assert!(uf.union(1, 2));
        assert!(!uf.union(0, 2));
        assert!(uf.joined(0, 2));
        uf.rollback(mark);
        assert!(!uf.joined(0, 2));
        assert!(uf.joined(0, 1));
    }
}
