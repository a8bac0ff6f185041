use std::collections::{HashMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::message::Message;
use crate::graph::NodeId;

/// Reliable delivery, FIFO on every directed channel, with the next
/// channel to deliver drawn at random among the non-empty ones.
#[derive(Debug)]
pub struct Scheduler {
    rng: ChaCha8Rng,
    queues: HashMap<(NodeId, NodeId), VecDeque<Message>>,
    /// Non-empty channels; `slot` maps a channel to its index here.
    live: Vec<(NodeId, NodeId)>,
    slot: HashMap<(NodeId, NodeId), usize>,
    pending: usize,
    delivered: usize,
}

impl Scheduler {
    pub fn new(seed: u64) -> Self {
        Scheduler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            queues: HashMap::new(),
            live: Vec::new(),
            slot: HashMap::new(),
            pending: 0,
            delivered: 0,
        }
    }

    pub fn push(&mut self, msg: Message) {
        let key = (msg.src, msg.dst);
        let q = self.queues.entry(key).or_default();
        if q.is_empty() {
            self.slot.insert(key, self.live.len());
            self.live.push(key);
        }
        q.push_back(msg);
        self.pending += 1;
    }

    pub fn pop(&mut self) -> Option<Message> {
        if self.live.is_empty() {
            return None;
        }
        let i = self.rng.gen_range(0..self.live.len());
        let key = self.live[i];
        let q = self.queues.get_mut(&key).expect("live channel");
        let msg = q.pop_front().expect("live channel is non-empty");
        if q.is_empty() {
            self.live.swap_remove(i);
            self.slot.remove(&key);
            if let Some(&moved) = self.live.get(i) {
                self.slot.insert(moved, i);
            }
        }
        self.pending -= 1;
        self.delivered += 1;
        Some(msg)
    }

    pub fn is_idle(&self) -> bool {
        self.pending == 0
    }

    pub fn delivered(&self) -> usize {
        self.delivered
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::message::{Payload, SignalKind};

    fn msg(src: NodeId, dst: NodeId, n: NodeId) -> Message {
        Message { kind: SignalKind::NbrList, src, dst, target: dst, payload: Payload::NbrList(vec![n]), send_clock: 0 }
    }

    #[test]
    fn fifo_per_channel_and_exactly_once() {
        let mut s = Scheduler::new(7);
        for i in 0..50 {
            s.push(msg(0, 1, i));
            s.push(msg(2, 1, 100 + i));
        }
        let mut a = Vec::new();
        let mut b = Vec::new();
        while let Some(m) = s.pop() {
            let Payload::NbrList(v) = m.payload else { unreachable!() };
            if m.src == 0 {
                a.push(v[0]);
            } else {
                b.push(v[0]);
            }
        }
        assert_eq!(a, (0..50).collect::<Vec<_>>());
        assert_eq!(b, (100..150).collect::<Vec<_>>());
        assert!(s.is_idle());
        assert_eq!(s.delivered(), 100);
    }

    #[test]
    fn seeds_change_interleaving() {
        let order = |seed| {
            let mut s = Scheduler::new(seed);
            for i in 0..20 {
                s.push(msg(i, 99, i));
            }
            std::iter::from_fn(|| s.pop()).map(|m| m.src).collect::<Vec<_>>()
        };
        assert_eq!(order(1), order(1));
        assert_ne!(order(1), order(2));
    }
}
