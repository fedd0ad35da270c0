//! Broadcasting automata on a finite window of Z².
//!
//! Every cell runs the same Moore-style machine. In each global step a cell
//! collects the set of distinct symbols broadcast by transmitters within
//! their current radius, then all cells move simultaneously. A cell that
//! transmitted in the previous step is refractory and hears nothing, which
//! stops a wave from re-exciting the cells behind it.

use std::collections::HashMap;
use std::fmt;

use crate::composition::BroadcastSequence;
use crate::error::{Error, Result};
use crate::lattice::{disc_points, Point, SquaredRadius, Window};

/// Set of received symbols, one bit per symbol index (at most 64 symbols).
pub type MessageSet = u64;

/// A broadcasting automaton `(Q, Σ, Λ, δ, Δ, τ, q0, F)`.
///
/// Output symbols are indices `0..64`; `None` is the empty output `ε`.
pub trait Automaton {
    type State: Copy + Eq + fmt::Debug;

    /// The state `q0` every cell starts in.
    fn initial(&self) -> Self::State;

    /// The state placed at the origin to start a computation.
    fn initiator(&self) -> Self::State;

    /// `δ(q, Γ)`; `None` means the transition is undefined and the
    /// computation halts.
    fn transition(&self, state: Self::State, received: MessageSet) -> Option<Self::State>;

    /// `Δ(q)`.
    fn output(&self, state: Self::State) -> Option<u8>;

    /// `τ(q)`, as a squared radius.
    fn radius2(&self, state: Self::State) -> SquaredRadius;

    fn is_final(&self, state: Self::State) -> bool;

    /// A cell is activated once it has left the initial state.
    fn is_active(&self, state: Self::State) -> bool {
        state != self.initial()
    }
}

/// States of the wave machines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WaveState {
    Quiescent,
    /// Transmitting symbol `i`.
    Excited(u8),
    /// Done; ignores everything.
    Relaxed,
}

/// The synchronous wave: one symbol, one radius. A quiescent cell that
/// hears anything becomes excited, transmits once, then relaxes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SyncWave {
    pub radius: SquaredRadius,
}

impl Automaton for SyncWave {
    type State = WaveState;

    fn initial(&self) -> WaveState {
        WaveState::Quiescent
    }

    fn initiator(&self) -> WaveState {
        WaveState::Excited(0)
    }

    fn transition(&self, state: WaveState, received: MessageSet) -> Option<WaveState> {
        Some(match state {
            WaveState::Quiescent if received != 0 => WaveState::Excited(0),
            WaveState::Quiescent => WaveState::Quiescent,
            WaveState::Excited(_) | WaveState::Relaxed => WaveState::Relaxed,
        })
    }

    fn output(&self, state: WaveState) -> Option<u8> {
        match state {
            WaveState::Excited(_) => Some(0),
            _ => None,
        }
    }

    fn radius2(&self, _state: WaveState) -> SquaredRadius {
        self.radius
    }

    fn is_final(&self, state: WaveState) -> bool {
        state == WaveState::Relaxed
    }
}

/// The asynchronous wave: a cell activated by `σ_i` transmits
/// `σ_{(i+1) mod |Σ|}` with radius `r_{(i+1) mod l}`, so the wave itself
/// carries its step count and can follow a periodic broadcasting sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsyncWave {
    seq: BroadcastSequence,
    alphabet: u8,
}

impl AsyncWave {
    /// `alphabet` must be a non-zero multiple of the sequence period and at
    /// most 64.
    pub fn new(seq: BroadcastSequence, alphabet: u8) -> Result<Self> {
        let period = seq.period();
        if alphabet == 0 || alphabet > 64 || !(alphabet as usize).is_multiple_of(period) {
            return Err(Error::AlphabetMismatch {
                alphabet: alphabet as usize,
                period,
            });
        }
        Ok(AsyncWave { seq, alphabet })
    }

    pub fn alphabet(&self) -> u8 {
        self.alphabet
    }

    pub fn sequence(&self) -> &BroadcastSequence {
        &self.seq
    }
}

impl Automaton for AsyncWave {
    type State = WaveState;

    fn initial(&self) -> WaveState {
        WaveState::Quiescent
    }

    fn initiator(&self) -> WaveState {
        WaveState::Excited(0)
    }

    fn transition(&self, state: WaveState, received: MessageSet) -> Option<WaveState> {
        Some(match state {
            WaveState::Quiescent if received != 0 => {
                let sigma = received.trailing_zeros() as u8;
                WaveState::Excited((sigma + 1) % self.alphabet)
            }
            WaveState::Quiescent => WaveState::Quiescent,
            WaveState::Excited(_) | WaveState::Relaxed => WaveState::Relaxed,
        })
    }

    fn output(&self, state: WaveState) -> Option<u8> {
        match state {
            WaveState::Excited(i) => Some(i),
            _ => None,
        }
    }

    fn radius2(&self, state: WaveState) -> SquaredRadius {
        match state {
            WaveState::Excited(i) => self.seq.radii()[i as usize % self.seq.period()],
            _ => self.seq.radii()[0],
        }
    }

    fn is_final(&self, state: WaveState) -> bool {
        state == WaveState::Relaxed
    }
}

/// A global state `c : window → Q` at time `time`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration<S> {
    pub window: Window,
    pub time: u32,
    states: Vec<S>,
    /// Cells that transmitted in the previous step and must ignore input.
    refractory: Vec<bool>,
}

impl<S: Copy> Configuration<S> {
    /// All cells in `machine.initial()`, the origin in `machine.initiator()`.
    pub fn new<A: Automaton<State = S>>(machine: &A, window: Window, origin: Point) -> Result<Self> {
        let Some(i) = window.index(origin) else {
            return Err(Error::OutsideWindow {
                x: origin.x,
                y: origin.y,
            });
        };
        let mut states = vec![machine.initial(); window.len()];
        states[i] = machine.initiator();
        Ok(Configuration {
            window,
            time: 0,
            states,
            refractory: vec![false; window.len()],
        })
    }

    pub fn state(&self, p: Point) -> Option<S> {
        self.window.index(p).map(|i| self.states[i])
    }

    pub fn states(&self) -> &[S] {
        &self.states
    }

    pub fn is_refractory(&self, p: Point) -> bool {
        self.window.index(p).is_some_and(|i| self.refractory[i])
    }

    /// Overrides a cell, for setting up custom scenarios.
    pub fn set_state(&mut self, p: Point, state: S) -> Result<()> {
        let i = self.window.index(p).ok_or(Error::OutsideWindow { x: p.x, y: p.y })?;
        self.states[i] = state;
        Ok(())
    }
}

/// `Γ_u`: the distinct symbols `u` can hear in `cfg`, ignoring the
/// refractory flag.
pub fn received_messages<A: Automaton>(machine: &A, cfg: &Configuration<A::State>, u: Point) -> MessageSet {
    let mut set = 0;
    for (i, &state) in cfg.states.iter().enumerate() {
        if let Some(sigma) = machine.output(state) {
            let v = cfg.window.point(i);
            if u.dist2(v) <= machine.radius2(state).get() {
                set |= 1 << sigma;
            }
        }
    }
    set
}

/// The computation stopped because `δ` was undefined at `point`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Halted {
    pub time: u32,
    pub point: Point,
}

struct OffsetCache(HashMap<u64, Vec<Point>>);

impl OffsetCache {
    fn get(&mut self, r2: SquaredRadius) -> &[Point] {
        self.0.entry(r2.get()).or_insert_with(|| disc_points(r2).points)
    }
}

/// One synchronous global transition.
pub fn global_step<A: Automaton>(
    machine: &A,
    cfg: &Configuration<A::State>,
) -> std::result::Result<Configuration<A::State>, Halted> {
    global_step_cached(machine, cfg, &mut OffsetCache(HashMap::new()))
}

fn global_step_cached<A: Automaton>(
    machine: &A,
    cfg: &Configuration<A::State>,
    cache: &mut OffsetCache,
) -> std::result::Result<Configuration<A::State>, Halted> {
    let window = cfg.window;
    let mut inbox = vec![0 as MessageSet; window.len()];
    for (i, &state) in cfg.states.iter().enumerate() {
        let Some(sigma) = machine.output(state) else { continue };
        let v = window.point(i);
        for &o in cache.get(machine.radius2(state)) {
            if let Some(j) = window.index(v + o) {
                inbox[j] |= 1 << sigma;
            }
        }
    }
    let mut states = Vec::with_capacity(window.len());
    let mut refractory = Vec::with_capacity(window.len());
    for (i, &state) in cfg.states.iter().enumerate() {
        let heard = if cfg.refractory[i] { 0 } else { inbox[i] };
        match machine.transition(state, heard) {
            Some(next) => states.push(next),
            None => {
                return Err(Halted {
                    time: cfg.time,
                    point: window.point(i),
                })
            }
        }
        refractory.push(machine.output(state).is_some());
    }
    Ok(Configuration {
        window,
        time: cfg.time + 1,
        states,
        refractory,
    })
}

/// The configurations `C_0, …, C_t` of a run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace<S> {
    pub frames: Vec<Configuration<S>>,
    /// Set if the run stopped early on an undefined transition.
    pub halted: Option<Halted>,
}

impl<S: Copy> Trace<S> {
    /// For every window cell, the first frame in which it is active.
    pub fn activation_times<A: Automaton<State = S>>(&self, machine: &A) -> Vec<Option<u32>> {
        let first = &self.frames[0];
        let mut times = vec![None; first.window.len()];
        for frame in &self.frames {
            for (t, &s) in times.iter_mut().zip(&frame.states) {
                if t.is_none() && machine.is_active(s) {
                    *t = Some(frame.time);
                }
            }
        }
        times
    }

    /// Points active in frame `t`.
    pub fn activated<A: Automaton<State = S>>(&self, machine: &A, t: usize) -> Vec<Point> {
        let frame = &self.frames[t];
        frame
            .states
            .iter()
            .enumerate()
            .filter(|&(_, &s)| machine.is_active(s))
            .map(|(i, _)| frame.window.point(i))
            .collect()
    }
}

/// Runs `steps` global transitions from a single initiator at `origin`.
pub fn run<A: Automaton>(machine: &A, window: Window, origin: Point, steps: u32) -> Result<Trace<A::State>> {
    let mut cache = OffsetCache(HashMap::new());
    let mut frames = vec![Configuration::new(machine, window, origin)?];
    let mut halted = None;
    for _ in 0..steps {
        match global_step_cached(machine, frames.last().unwrap(), &mut cache) {
            Ok(next) => frames.push(next),
            Err(h) => {
                halted = Some(h);
                break;
            }
        }
    }
    Ok(Trace { frames, halted })
}

/// Synchronous run of a [`SyncWave`].
pub fn run_sync(machine: &SyncWave, window: Window, origin: Point, steps: u32) -> Result<Trace<WaveState>> {
    run(machine, window, origin, steps)
}

/// Asynchronous run of an [`AsyncWave`].
pub fn run_async(machine: &AsyncWave, window: Window, origin: Point, steps: u32) -> Result<Trace<WaveState>> {
    run(machine, window, origin, steps)
}
