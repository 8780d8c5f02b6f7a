//! Successive-cancellation list decoding with optional shift-pruning.
//!
//! Every path owns a copy of the LLR and partial-sum memory of the decoding
//! tree. Stage `s` (`0 ≤ s < n`) holds `2^s` LLRs at offset `2^s`; its
//! partial sums live in two slots (left and right child output) at offset
//! `2^{s+1}`. Stage `n` is the channel and is shared.

use super::kernels::{f_min_sum, llr_f, llr_g, pm_update, MetricMode};
use crate::polar::CodeConfig;
use crate::{Bit, Error, Result};

/// One complete or partial candidate of the list.
#[derive(Debug, Clone, PartialEq)]
pub struct DecodePath {
    /// Decided input bits `û_1^N` (frozen positions included).
    pub decisions: Vec<Bit>,
    pub path_metric: f64,
}

/// Path metrics on both sides of one pruning step.
///
/// `survivor_pms` are the metrics of the paths that were kept and
/// `removed_pms` those that were dropped, each ascending. Without a shift,
/// `max(survivor_pms) ≤ min(removed_pms)`; at a shifted step the roles of the
/// two halves are exchanged.
#[derive(Debug, Clone, PartialEq)]
pub struct PruneRecord {
    /// 1-based information index.
    pub info_index: usize,
    pub survivor_pms: Vec<f64>,
    pub removed_pms: Vec<f64>,
    /// The worse half of the candidates was kept at this step.
    pub shifted: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecodeOutput {
    /// Final list, ascending path metric.
    pub paths: Vec<DecodePath>,
    /// One record per information index outside `𝒜_0`, in index order.
    pub prune_records: Vec<PruneRecord>,
    /// Position in `paths` of the first CRC-passing path.
    pub selected: Option<usize>,
    /// Earliest 1-based information index at which every path consistent
    /// with the reference input was pruned. Only set when a reference was
    /// supplied.
    pub reference_lost_at: Option<usize>,
}

impl DecodeOutput {
    /// Whether a path equal to the reference input is still in the final list.
    pub fn contains(&self, u_full: &[Bit]) -> bool {
        self.paths.iter().any(|p| p.decisions == u_full)
    }
}

/// Options for one list-decoding pass.
#[derive(Debug, Clone, Copy)]
pub struct DecodeOptions<'a> {
    pub list_size: usize,
    /// 1-based information index at which the worse half of the candidates
    /// survives instead of the better half.
    pub flip_index: Option<usize>,
    pub mode: MetricMode,
    /// Transmitted input vector, used only to report where it left the list.
    pub reference: Option<&'a [Bit]>,
}

impl<'a> DecodeOptions<'a> {
    pub fn new(list_size: usize) -> Self {
        Self { list_size, flip_index: None, mode: MetricMode::MinSum, reference: None }
    }

    pub fn flip(mut self, index: Option<usize>) -> Self {
        self.flip_index = index;
        self
    }

    pub fn mode(mut self, mode: MetricMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn reference(mut self, u_full: &'a [Bit]) -> Self {
        self.reference = Some(u_full);
        self
    }
}

/// The information indices in `𝒜_0`: the first `log2(L)` entries of `𝒜`.
pub fn unpruned_prefix(config: &CodeConfig, list_size: usize) -> &[usize] {
    let k = list_size.trailing_zeros() as usize;
    &config.info_set()[..k.min(config.info_set().len())]
}

/// The information indices where pruning happens, `𝒜 \ 𝒜_0`.
pub fn prunable_indices(config: &CodeConfig, list_size: usize) -> &[usize] {
    let k = list_size.trailing_zeros() as usize;
    &config.info_set()[k.min(config.info_set().len())..]
}

/// SCL decoding with min-sum updates; `flip_index` enables shift-pruning.
pub fn scl_decode(
    llrs: &[f64],
    config: &CodeConfig,
    list_size: usize,
    flip_index: Option<usize>,
) -> Result<DecodeOutput> {
    decode_with(llrs, config, &DecodeOptions::new(list_size).flip(flip_index))
}

/// SCL decoding with full control over the pass.
pub fn decode_with(llrs: &[f64], config: &CodeConfig, opts: &DecodeOptions<'_>) -> Result<DecodeOutput> {
    let n_block = config.n_block();
    if llrs.len() != n_block {
        return Err(Error::WrongLength { expected: n_block, actual: llrs.len() });
    }
    let list = opts.list_size;
    if list == 0 || !list.is_power_of_two() {
        return Err(Error::ListSizeNotPowerOfTwo(list));
    }
    let info_len = config.info_set().len();
    if (list.trailing_zeros() as usize) > info_len {
        return Err(Error::ListTooLarge { list, info: info_len });
    }
    if let Some(i) = opts.flip_index {
        if !prunable_indices(config, list).contains(&i) {
            return Err(Error::InvalidFlipIndex(i));
        }
    }
    if let Some(r) = opts.reference {
        if r.len() != n_block {
            return Err(Error::WrongLength { expected: n_block, actual: r.len() });
        }
    }
    let mut dec = ListState::new(n_block, list);
    Ok(dec.run(llrs, config, opts))
}

#[derive(Clone, Copy)]
struct Candidate {
    parent: usize,
    bit: Bit,
    pm: f64,
}

/// Stable ascending sort on finite metrics; at most `2L` entries.
fn insertion_sort(c: &mut [Candidate]) {
    for j in 1..c.len() {
        let x = c[j];
        let mut k = j;
        while k > 0 && x.pm < c[k - 1].pm {
            c[k] = c[k - 1];
            k -= 1;
        }
        c[k] = x;
    }
}

struct ListState {
    n_block: usize,
    stages: usize,
    list: usize,
    llr: Vec<f64>,
    sums: Vec<Bit>,
    u: Vec<Bit>,
    pm: Vec<f64>,
    on_reference: Vec<bool>,
    /// Slots of the live paths in rank order.
    active: Vec<usize>,
    free: Vec<usize>,
    // scratch for `fork`
    counts: Vec<u8>,
    assigned: Vec<usize>,
    parent_on: Vec<bool>,
}

impl ListState {
    fn new(n_block: usize, list: usize) -> Self {
        Self {
            n_block,
            stages: n_block.trailing_zeros() as usize,
            list,
            llr: vec![0.0; list * n_block],
            sums: vec![0; list * 2 * n_block],
            u: vec![0; list * n_block],
            pm: vec![0.0; list],
            on_reference: vec![true; list],
            active: vec![0],
            free: (1..list).rev().collect(),
            counts: Vec::with_capacity(list),
            assigned: Vec::with_capacity(2 * list),
            parent_on: Vec::with_capacity(list),
        }
    }

    fn run(&mut self, channel: &[f64], config: &CodeConfig, opts: &DecodeOptions<'_>) -> DecodeOutput {
        let frozen = config.frozen_mask();
        let mut records = Vec::with_capacity(config.info_set().len());
        let mut lost_at = None;
        let mut cands: Vec<Candidate> = Vec::with_capacity(2 * self.list);
        let mut leaf = vec![0.0; self.list];

        let spans =
            if opts.mode == MetricMode::MinSum { frozen_spans(frozen, self.stages) } else { vec![0; self.n_block] };
        let mut i = 0;
        while i < self.n_block {
            if spans[i] > 0 {
                let s = spans[i] as usize;
                let off_reference = opts.reference.is_some_and(|u| u[i..i + (1 << s)].iter().any(|&b| b != 0));
                for r in 0..self.active.len() {
                    let slot = self.active[r];
                    self.pm[slot] += self.frozen_node(slot, i, s, channel);
                    if off_reference {
                        self.on_reference[slot] = false;
                    }
                }
                i += 1 << s;
                continue;
            }
            for (r, l) in leaf[..self.active.len()].iter_mut().enumerate() {
                *l = self.leaf_llr(self.active[r], i, channel, opts.mode);
            }
            let reference_bit = opts.reference.map(|u| u[i]);

            if frozen[i] {
                for (r, &slot) in self.active.iter().enumerate() {
                    self.pm[slot] = pm_update(self.pm[slot], leaf[r], 0, opts.mode);
                    if reference_bit.is_some_and(|b| b != 0) {
                        self.on_reference[slot] = false;
                    }
                }
                for r in 0..self.active.len() {
                    let slot = self.active[r];
                    self.commit(slot, i, 0);
                }
                i += 1;
                continue;
            }

            cands.clear();
            for (r, &slot) in self.active.iter().enumerate() {
                for bit in [0, 1] {
                    cands.push(Candidate { parent: r, bit, pm: pm_update(self.pm[slot], leaf[r], bit, opts.mode) });
                }
            }
            // stable: equal metrics keep (parent rank, bit 0 first)
            insertion_sort(&mut cands);

            let keep: &[Candidate] = if cands.len() > self.list {
                let shifted = opts.flip_index == Some(i + 1);
                let (best, worst) = cands.split_at(self.list);
                let (kept, dropped) = if shifted { (worst, best) } else { (best, worst) };
                let record = PruneRecord {
                    info_index: i + 1,
                    survivor_pms: kept.iter().map(|c| c.pm).collect(),
                    removed_pms: dropped.iter().map(|c| c.pm).collect(),
                    shifted,
                };
                records.push(record);
                if let Some(b) = reference_bit {
                    let was = cands.iter().any(|c| self.on_reference[self.active[c.parent]] && c.bit == b);
                    let still = kept.iter().any(|c| self.on_reference[self.active[c.parent]] && c.bit == b);
                    if was && !still && lost_at.is_none() {
                        lost_at = Some(i + 1);
                    }
                }
                if shifted {
                    &cands[self.list..]
                } else {
                    &cands[..self.list]
                }
            } else {
                &cands[..]
            };
            self.fork(keep, i, reference_bit);
            i += 1;
        }

        let mut order = self.active.clone();
        // stable sort keeps rank order on ties
        order.sort_by(|&a, &b| self.pm[a].total_cmp(&self.pm[b]));
        let paths: Vec<DecodePath> = order
            .iter()
            .map(|&slot| DecodePath {
                decisions: self.u[slot * self.n_block..(slot + 1) * self.n_block].to_vec(),
                path_metric: self.pm[slot],
            })
            .collect();
        let selected = paths.iter().position(|p| config.crc().check(&config.extract(&p.decisions)));
        DecodeOutput { paths, prune_records: records, selected, reference_lost_at: lost_at }
    }

    /// Replaces the live list with the chosen children of the current paths.
    fn fork(&mut self, keep: &[Candidate], i: usize, reference_bit: Option<Bit>) {
        let mut counts = std::mem::take(&mut self.counts);
        let mut assigned = std::mem::take(&mut self.assigned);
        let mut parent_on = std::mem::take(&mut self.parent_on);
        counts.clear();
        counts.resize(self.active.len(), 0);
        parent_on.clear();
        parent_on.extend(self.active.iter().map(|&s| self.on_reference[s]));
        for c in keep {
            counts[c.parent] += 1;
        }
        for (r, &cnt) in counts.iter().enumerate() {
            if cnt == 0 {
                self.free.push(self.active[r]);
            }
        }
        // the first child of a parent inherits its slot; a second child gets
        // a copy taken before any decision of this step is written
        assigned.clear();
        for c in keep {
            let taken = &mut counts[c.parent];
            if *taken > 0 && *taken != u8::MAX {
                *taken = u8::MAX;
                assigned.push(self.active[c.parent]);
            } else {
                let slot = self.free.pop().expect("list capacity");
                self.copy_path(self.active[c.parent], slot, i);
                assigned.push(slot);
            }
        }
        for (c, &slot) in keep.iter().zip(&assigned) {
            self.pm[slot] = c.pm;
            self.on_reference[slot] = parent_on[c.parent] && reference_bit.is_none_or(|b| b == c.bit);
            self.commit(slot, i, c.bit);
        }
        self.active.clear();
        self.active.extend_from_slice(&assigned);
        self.counts = counts;
        self.assigned = assigned;
        self.parent_on = parent_on;
    }

    fn copy_path(&mut self, from: usize, to: usize, i: usize) {
        let n = self.n_block;
        self.llr.copy_within(from * n..(from + 1) * n, to * n);
        self.sums.copy_within(from * 2 * n..(from + 1) * 2 * n, to * 2 * n);
        self.u.copy_within(from * n..from * n + i, to * n);
        self.pm[to] = self.pm[from];
        self.on_reference[to] = self.on_reference[from];
    }

    /// Computes the input LLRs of the stage-`stop` node whose first leaf is
    /// `i`, for the path in `slot`. They land at offset `2^stop`.
    fn node_llr(&mut self, slot: usize, i: usize, stop: usize, channel: &[f64], mode: MetricMode) {
        let n = self.n_block;
        let top = if i == 0 { self.stages } else { i.trailing_zeros() as usize + 1 };
        let llr = &mut self.llr[slot * n..(slot + 1) * n];
        let sums = &self.sums[slot * 2 * n..(slot + 1) * 2 * n];
        for s in (stop..top).rev() {
            let h = 1usize << s;
            let (lower, upper) = llr.split_at_mut(2 * h);
            let out = &mut lower[h..2 * h];
            let parent: &[f64] = if s + 1 == self.stages { channel } else { &upper[..2 * h] };
            let (a, b) = parent[..2 * h].split_at(h);
            if h == 1 {
                out[0] = if i != 0 && s + 1 == top { llr_g(a[0], b[0], sums[2]) } else { llr_f(a[0], b[0], mode) };
                continue;
            }
            if i != 0 && s + 1 == top {
                let left = &sums[2 * h..3 * h];
                for (((o, &x), &y), &u) in out.iter_mut().zip(a).zip(b).zip(left) {
                    *o = llr_g(x, y, u);
                }
            } else {
                match mode {
                    MetricMode::MinSum => {
                        for ((o, &x), &y) in out.iter_mut().zip(a).zip(b) {
                            *o = f_min_sum(x, y);
                        }
                    }
                    MetricMode::Exact => {
                        for ((o, &x), &y) in out.iter_mut().zip(a).zip(b) {
                            *o = llr_f(x, y, MetricMode::Exact);
                        }
                    }
                }
            }
        }
    }

    fn leaf_llr(&mut self, slot: usize, i: usize, channel: &[f64], mode: MetricMode) -> f64 {
        if self.stages == 0 {
            return channel[0];
        }
        self.node_llr(slot, i, 0, channel, mode);
        self.llr[slot * self.n_block + 1]
    }

    /// Min-sum penalty of deciding the whole frozen stage-`s` node at leaf
    /// `i` as zeros: `Σ max(0, −α)` over its input LLRs, which equals the sum
    /// of the per-leaf penalties.
    fn frozen_node(&mut self, slot: usize, i: usize, s: usize, channel: &[f64]) -> f64 {
        let n = self.n_block;
        let h = 1usize << s;
        let input: &[f64] = if s == self.stages {
            channel
        } else {
            self.node_llr(slot, i, s, channel, MetricMode::MinSum);
            &self.llr[slot * n + h..slot * n + 2 * h]
        };
        let penalty = input.iter().map(|&a| (-a).max(0.0)).sum();
        self.u[slot * n + i..slot * n + i + h].fill(0);
        if s < self.stages {
            let side = (i >> s) & 1;
            let base = slot * 2 * n + 2 * h + side * h;
            self.sums[base..base + h].fill(0);
            self.fold_up(slot, i + h - 1, s);
        }
        penalty
    }

    /// Records decision `bit` for leaf `i` and folds partial sums upward.
    fn commit(&mut self, slot: usize, i: usize, bit: Bit) {
        let n = self.n_block;
        self.u[slot * n + i] = bit;
        if self.stages == 0 {
            return;
        }
        self.sums[slot * 2 * n + 2 + (i & 1)] = bit;
        self.fold_up(slot, i, 0);
    }

    /// Combines finished right children into their parents, starting at the
    /// stage-`from` node that contains leaf `i_last` as its last leaf.
    fn fold_up(&mut self, slot: usize, i_last: usize, from: usize) {
        let n = self.n_block;
        let sums = &mut self.sums[slot * 2 * n..(slot + 1) * 2 * n];
        let i = i_last;
        let mut s = from;
        if s == 0 && i & 1 == 1 && self.stages > 1 {
            let (l, r) = (sums[2], sums[3]);
            let dst = 4 + ((i >> 1) & 1) * 2;
            sums[dst] = l ^ r;
            sums[dst + 1] = r;
            s = 1;
        }
        while (i >> s) & 1 == 1 && s + 1 < self.stages {
            let h = 1usize << s;
            let side = (i >> (s + 1)) & 1;
            let (src, dst) = sums.split_at_mut(4 * h);
            let (left, right) = src[2 * h..].split_at(h);
            let (d_xor, d_right) = dst[side * 2 * h..(side + 1) * 2 * h].split_at_mut(h);
            for ((d, &l), &r) in d_xor.iter_mut().zip(left).zip(right) {
                *d = l ^ r;
            }
            d_right.copy_from_slice(right);
            s += 1;
        }
    }
}

/// For every leaf, the stage of the largest all-frozen node that starts
/// there (`0` when there is none bigger than one leaf).
fn frozen_spans(frozen: &[bool], stages: usize) -> Vec<u8> {
    let n = frozen.len();
    let mut spans = vec![0u8; n];
    for (i, span) in spans.iter_mut().enumerate() {
        let mut s = 0;
        while s < stages && i % (2usize << s) == 0 && frozen[i..i + (2usize << s)].iter().all(|&f| f) {
            s += 1;
        }
        *span = s as u8;
    }
    spans
}

/// Walks the list in ascending metric order and returns the `K` message bits
/// of the first path whose `K + r` information bits pass the CRC.
pub fn ca_scl_select(output: &DecodeOutput, config: &CodeConfig) -> Option<Vec<Bit>> {
    output.paths.iter().find_map(|p| {
        let info = config.extract(&p.decisions);
        config.crc().check(&info).then(|| info[..config.k_msg()].to_vec())
    })
}
