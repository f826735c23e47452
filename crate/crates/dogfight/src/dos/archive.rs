//! Bounded store of valuable solutions: positions recorded at moments of
//! fitness improvement, ring-buffered so the matrix stays biased toward
//! recent improvements. Admission additionally requires the improved fitness
//! to beat the recording formation's median, which keeps far-flung returning
//! explorers out of the guidance pool.

#[derive(Clone, Debug)]
pub struct ArchiveEntry {
    pub position: Vec<f64>,
    pub fitness: f64,
    push_id: u64,
}

#[derive(Clone, Debug)]
pub struct Archive {
    entries: Vec<ArchiveEntry>,
    capacity: usize,
    cursor: usize,
    pushes: u64,
}

impl Archive {
    /// Capacity is `round(2.5 * swarm_size)`.
    pub fn for_swarm(swarm_size: usize) -> Self {
        Self::with_capacity((2.5 * swarm_size as f64).round() as usize)
    }

    pub fn with_capacity(capacity: usize) -> Self {
        assert!(capacity > 0);
        Self {
            entries: Vec::with_capacity(capacity),
            capacity,
            cursor: 0,
            pushes: 0,
        }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn occupancy(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn push(&mut self, position: Vec<f64>, fitness: f64) {
        let entry = ArchiveEntry {
            position,
            fitness,
            push_id: self.pushes,
        };
        self.pushes += 1;
        if self.entries.len() < self.capacity {
            self.entries.push(entry);
        } else {
            self.entries[self.cursor] = entry;
            self.cursor = (self.cursor + 1) % self.capacity;
        }
    }

    /// Entry in storage order (the row of the valuable-solution matrix).
    pub fn entry(&self, index: usize) -> &ArchiveEntry {
        &self.entries[index]
    }

    /// The `n` most recently pushed entries, newest first.
    pub fn recent(&self, n: usize) -> Vec<&ArchiveEntry> {
        let mut refs: Vec<&ArchiveEntry> = self.entries.iter().collect();
        refs.sort_by(|a, b| b.push_id.cmp(&a.push_id));
        refs.truncate(n);
        refs
    }

    /// Centroid of the `n` most recent entries; `None` when empty.
    pub fn recent_centroid(&self, n: usize) -> Option<Vec<f64>> {
        if self.entries.is_empty() || n == 0 {
            return None;
        }
        let picked = self.recent(n);
        let dim = picked[0].position.len();
        let mut centroid = vec![0.0; dim];
        for e in &picked {
            for (c, &x) in centroid.iter_mut().zip(&e.position) {
                *c += x;
            }
        }
        let count = picked.len() as f64;
        centroid.iter_mut().for_each(|c| *c /= count);
        Some(centroid)
    }
}
