//! Fixed-capacity FIFO ring buffer for node ids.
//!
//! The node-selection loop enqueues a node only while its in-queue flag is
//! clear, so at most one entry per node exists and a buffer of `node_count`
//! slots can never overflow. That makes push/pop two array accesses and a
//! wrap check, with no reallocation during the search.

pub(crate) struct NodeRing {
    buf: Vec<u32>,
    head: usize,
    len: usize,
}

impl NodeRing {
    pub fn new(capacity: usize) -> Self {
        NodeRing {
            buf: vec![0; capacity.max(1)],
            head: 0,
            len: 0,
        }
    }

    pub fn push(&mut self, v: u32) {
        debug_assert!(self.len < self.buf.len(), "ring over capacity");
        let mut slot = self.head + self.len;
        if slot >= self.buf.len() {
            slot -= self.buf.len();
        }
        self.buf[slot] = v;
        self.len += 1;
    }

    pub fn pop(&mut self) -> Option<u32> {
        if self.len == 0 {
            return None;
        }
        let v = self.buf[self.head];
        self.head += 1;
        if self.head == self.buf.len() {
            self.head = 0;
        }
        self.len -= 1;
        Some(v)
    }
}
