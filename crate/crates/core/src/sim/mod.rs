//! Broadcasting-automata simulation and the labellings it induces.

mod automaton;
mod labeling;

pub use automaton::{
    global_step, received_messages, run, run_async, run_sync, AsyncWave, Automaton, Configuration, Halted, MessageSet,
    SyncWave, Trace, WaveState,
};
pub use labeling::{
    a_distance, hull_octant_code, label_window, m_neighbour_step, polygon_contains, propagate_sequence, reach_polygon,
    steps_to_cover, Labeling,
};
