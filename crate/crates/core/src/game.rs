//! The vertex-picking game on two hypergraphs, with the look-ahead strategy.
//!
//! Spoiler picks a vertex on either side each round; Duplicator must answer
//! on the other side. Repeating an old pick forces the paired answer; fresh
//! picks demand fresh answers. After k rounds Duplicator has won when the
//! chosen tuples induce matching edge patterns: every set of s round indices
//! spans an edge on one side exactly when it does on the other. For arity 2
//! this is the classical adjacency condition; the subset form is its only
//! meaningful reading for larger arities.
//!
//! Duplicator plays the look-ahead strategy: a nonincreasing schedule
//! a_1 >= ... >= a_k = 0 fixed from the closure constants, answering each
//! round so that the picked tuples have isomorphic a_r-closures.

use std::io::{BufRead, Write};

use rand::Rng;
use serde::Serialize;

use crate::closure::{closure_t, finite_closure_constants, same_t_type};
use crate::error::{Error, Result};
use crate::extension::Exponent;
use crate::hypergraph::Hypergraph;

/// Which hypergraph a pick lands in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ongoing,
    SpoilerWon,
    DuplicatorWon,
}

/// Game transcript state. `history` stores one (left, right) vertex pair per
/// completed round regardless of which side Spoiler chose.
#[derive(Debug, Clone)]
pub struct GameState {
    pub g1: Hypergraph,
    pub g2: Hypergraph,
    pub rounds: usize,
    pub history: Vec<(usize, usize)>,
    pub pending: Option<(Side, usize)>,
    pub status: Status,
}

impl GameState {
    pub fn new(g1: Hypergraph, g2: Hypergraph, rounds: usize) -> Result<Self> {
        if g1.arity() != g2.arity() {
            return Err(Error::ArityMismatch {
                left: g1.arity(),
                right: g2.arity(),
            });
        }
        if rounds == 0 || g1.vertex_count() == 0 || g2.vertex_count() == 0 {
            return Err(Error::InvalidParameter(
                "need at least one round and nonempty vertex sets".into(),
            ));
        }
        Ok(GameState {
            g1,
            g2,
            rounds,
            history: Vec::new(),
            pending: None,
            status: Status::Ongoing,
        })
    }

    pub fn round(&self) -> usize {
        self.history.len() + 1
    }

    fn side_graph(&self, side: Side) -> &Hypergraph {
        match side {
            Side::Left => &self.g1,
            Side::Right => &self.g2,
        }
    }

    fn tuple(&self, side: Side) -> Vec<usize> {
        self.history
            .iter()
            .map(|&(l, r)| match side {
                Side::Left => l,
                Side::Right => r,
            })
            .collect()
    }

    pub fn spoiler_pick(&mut self, side: Side, vertex: usize) -> Result<()> {
        if self.status != Status::Ongoing || self.pending.is_some() {
            return Err(Error::InvalidParameter("not Spoiler's turn".into()));
        }
        if vertex >= self.side_graph(side).vertex_count() {
            return Err(Error::VertexOutOfRange(vertex));
        }
        self.pending = Some((side, vertex));
        Ok(())
    }

    /// When Spoiler repeated one of his earlier picks, the answer is forced
    /// to the vertex paired with it.
    pub fn forced_response(&self) -> Option<usize> {
        let (side, v) = self.pending?;
        self.history.iter().find_map(|&(l, r)| match side {
            Side::Left if l == v => Some(r),
            Side::Right if r == v => Some(l),
            _ => None,
        })
    }

    /// Records Duplicator's answer on the side opposite the pending pick.
    pub fn duplicator_reply(&mut self, vertex: usize) -> Result<()> {
        let (side, picked) = self
            .pending
            .ok_or_else(|| Error::InvalidParameter("no pending Spoiler pick".into()))?;
        let other = side.other();
        if vertex >= self.side_graph(other).vertex_count() {
            return Err(Error::VertexOutOfRange(vertex));
        }
        match self.forced_response() {
            Some(f) => {
                if vertex != f {
                    return Err(Error::InvalidParameter(format!(
                        "repeat pick forces vertex {f}"
                    )));
                }
            }
            None => {
                let fresh = self.tuple(other).iter().all(|&u| u != vertex);
                if !fresh {
                    return Err(Error::InvalidParameter(
                        "answer to a fresh pick must be fresh".into(),
                    ));
                }
            }
        }
        let pair = match side {
            Side::Left => (picked, vertex),
            Side::Right => (vertex, picked),
        };
        self.history.push(pair);
        self.pending = None;
        if self.history.len() == self.rounds {
            self.status = adjudicate(self)?;
        }
        Ok(())
    }

    pub fn resign(&mut self) {
        self.status = Status::SpoilerWon;
    }
}

/// Final adjudication: the pick pairing must be a partial isomorphism. For
/// every s-subset of round indices whose left picks are distinct vertices,
/// the left set spans an edge exactly when the right set does.
pub fn adjudicate(state: &GameState) -> Result<Status> {
    if state.history.len() < state.rounds {
        return Err(Error::InvalidParameter(
            "adjudication before the final round".into(),
        ));
    }
    let s = state.g1.arity();
    let k = state.history.len();
    if k < s {
        return Ok(Status::DuplicatorWon);
    }
    let mut combo: Vec<usize> = (0..s).collect();
    loop {
        let mut left: Vec<usize> = combo.iter().map(|&i| state.history[i].0).collect();
        let mut right: Vec<usize> = combo.iter().map(|&i| state.history[i].1).collect();
        left.sort_unstable();
        left.dedup();
        right.sort_unstable();
        right.dedup();
        // Repeats collapse identically on both sides (the forcing rule),
        // leaving fewer than s vertices: no edge constraint there.
        if left.len() == s || right.len() == s {
            let l = left.len() == s && state.g1.has_edge(&left);
            let r = right.len() == s && state.g2.has_edge(&right);
            if l != r {
                return Ok(Status::SpoilerWon);
            }
        }
        let mut i = s;
        let mut advanced = false;
        while i > 0 {
            i -= 1;
            if combo[i] < i + k - s {
                combo[i] += 1;
                for j in i + 1..s {
                    combo[j] = combo[j - 1] + 1;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            return Ok(Status::DuplicatorWon);
        }
    }
}

/// The look-ahead schedule (a_1, ..., a_k), built backwards from a_k = 0.
/// Knowing a_{r+1}, the closure of any (r+1)-set has at most K + r + 1
/// vertices where K comes from the closure constants at t = a_{r+1}, so
/// a_r = max(a_{r+1}, K + 1) suffices; when a_{r+1} = 0 the closure is the
/// set itself and a_r = max(a_{r+1}, 1).
pub fn lookahead_schedule(k: usize, alpha: &Exponent) -> Result<Vec<usize>> {
    if k == 0 {
        return Err(Error::InvalidParameter("need at least one round".into()));
    }
    let mut schedule = vec![0usize; k];
    for r in (1..k).rev() {
        let next = schedule[r];
        schedule[r - 1] = if next == 0 {
            next.max(1)
        } else {
            let (_, big_k) = finite_closure_constants(next, r + 1, alpha)?;
            next.max(big_k as usize + 1)
        };
    }
    Ok(schedule)
}

/// Duplicator's look-ahead answer to the pending pick: the forced vertex on
/// a repeat, otherwise some fresh vertex making the extended tuples agree on
/// their a_r-types. Vertices already absorbed into the closure of her own
/// tuple are tried first. `None` means resignation.
pub fn duplicator_respond(
    state: &GameState,
    schedule: &[usize],
    alpha: &Exponent,
) -> Result<Option<usize>> {
    let (side, picked) = state
        .pending
        .ok_or_else(|| Error::InvalidParameter("no pending Spoiler pick".into()))?;
    if let Some(forced) = state.forced_response() {
        return Ok(Some(forced));
    }
    let r = state.round();
    let t = *schedule.get(r - 1).ok_or_else(|| {
        Error::InvalidParameter(format!("schedule shorter than round {r}"))
    })?;
    let spoiler_graph = state.side_graph(side);
    let own_side = side.other();
    let own_graph = state.side_graph(own_side);
    let mut spoiler_tuple = state.tuple(side);
    spoiler_tuple.push(picked);
    let own_tuple = state.tuple(own_side);

    // Try members of the closure of the current own tuple first.
    let mut order: Vec<usize> = Vec::new();
    if !own_tuple.is_empty() && t > 0 {
        let c = closure_t(own_graph, &own_tuple, t, alpha)?;
        order.extend(c.closure.iter().copied());
    }
    for v in own_graph.vertices() {
        if !order.contains(&v) {
            order.push(v);
        }
    }
    for w in order {
        if own_tuple.contains(&w) {
            continue;
        }
        let mut candidate_tuple = own_tuple.clone();
        candidate_tuple.push(w);
        if same_t_type(
            spoiler_graph,
            &spoiler_tuple,
            own_graph,
            &candidate_tuple,
            t,
            alpha,
        )? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Spoiler move generators.
pub trait SpoilerPolicy {
    fn pick(&mut self, state: &GameState) -> Result<(Side, usize)>;
    fn name(&self) -> &'static str;
}

/// Uniformly random side and unchosen vertex.
pub struct RandomSpoiler {
    pub rng: rand_chacha::ChaCha12Rng,
}

impl SpoilerPolicy for RandomSpoiler {
    fn pick(&mut self, state: &GameState) -> Result<(Side, usize)> {
        let side = if self.rng.gen::<bool>() {
            Side::Left
        } else {
            Side::Right
        };
        let g = state.side_graph(side);
        let taken = state.tuple(side);
        let free: Vec<usize> = g.vertices().filter(|v| !taken.contains(v)).collect();
        if free.is_empty() {
            let v = self.rng.gen_range(0..g.vertex_count());
            return Ok((side, v));
        }
        Ok((side, free[self.rng.gen_range(0..free.len())]))
    }

    fn name(&self) -> &'static str {
        "random"
    }
}

/// Alternates sides (left on odd rounds) and picks the highest-degree
/// unchosen vertex there, lowest id on ties.
pub struct GreedyDegreeSpoiler;

impl SpoilerPolicy for GreedyDegreeSpoiler {
    fn pick(&mut self, state: &GameState) -> Result<(Side, usize)> {
        let side = if state.round() % 2 == 1 {
            Side::Left
        } else {
            Side::Right
        };
        let g = state.side_graph(side);
        let taken = state.tuple(side);
        let deg = g.degrees();
        let v = g
            .vertices()
            .filter(|v| !taken.contains(v))
            .max_by_key(|&v| (deg[v], std::cmp::Reverse(v)))
            .ok_or_else(|| Error::InvalidParameter("no unchosen vertex left".into()))?;
        Ok((side, v))
    }

    fn name(&self) -> &'static str {
        "greedy"
    }
}

/// Interactive Spoiler: reads `SIDE VERTEX` lines (side is 1/2 or l/r),
/// reprompting on bad input. End of input resigns the match for Spoiler's
/// opponent, surfacing as an error here.
pub struct HumanSpoiler<R, W> {
    pub input: R,
    pub output: W,
}

impl<R: BufRead, W: Write> SpoilerPolicy for HumanSpoiler<R, W> {
    fn pick(&mut self, state: &GameState) -> Result<(Side, usize)> {
        loop {
            writeln!(
                self.output,
                "round {} of {} | picks so far: {:?}",
                state.round(),
                state.rounds,
                state.history
            )
            .ok();
            write!(
                self.output,
                "spoiler> pick SIDE VERTEX (side: 1/l = left on {} vertices, 2/r = right on {}): ",
                state.g1.vertex_count(),
                state.g2.vertex_count()
            )
            .ok();
            self.output.flush().ok();
            let mut line = String::new();
            let read = self
                .input
                .read_line(&mut line)
                .map_err(|e| Error::InvalidParameter(format!("input: {e}")))?;
            if read == 0 {
                return Err(Error::InvalidParameter("end of input".into()));
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 2 {
                writeln!(self.output, "expected two fields").ok();
                continue;
            }
            let side = match fields[0] {
                "1" | "l" | "left" => Side::Left,
                "2" | "r" | "right" => Side::Right,
                _ => {
                    writeln!(self.output, "unknown side {:?}", fields[0]).ok();
                    continue;
                }
            };
            let vertex: usize = match fields[1].parse() {
                Ok(v) => v,
                Err(_) => {
                    writeln!(self.output, "bad vertex id {:?}", fields[1]).ok();
                    continue;
                }
            };
            if vertex >= state.side_graph(side).vertex_count() {
                writeln!(self.output, "vertex {vertex} out of range").ok();
                continue;
            }
            return Ok((side, vertex));
        }
    }

    fn name(&self) -> &'static str {
        "human"
    }
}

/// One round of the transcript.
#[derive(Debug, Clone, Serialize)]
pub struct RoundRecord {
    pub round: usize,
    pub spoiler_side: Side,
    pub spoiler_vertex: usize,
    pub duplicator_vertex: Option<usize>,
    pub forced: bool,
}

#[derive(Debug, Clone)]
pub struct MatchOutcome {
    pub state: GameState,
    pub transcript: Vec<RoundRecord>,
    pub resigned: bool,
    pub schedule: Vec<usize>,
}

/// Plays one match: Spoiler from `policy`, Duplicator on the look-ahead
/// schedule for `alpha`.
pub fn play_match(
    g1: &Hypergraph,
    g2: &Hypergraph,
    rounds: usize,
    policy: &mut dyn SpoilerPolicy,
    alpha: &Exponent,
) -> Result<MatchOutcome> {
    let schedule = lookahead_schedule(rounds, alpha)?;
    let mut state = GameState::new(g1.clone(), g2.clone(), rounds)?;
    let mut transcript = Vec::new();
    let mut resigned = false;
    while state.status == Status::Ongoing {
        let round = state.round();
        let (side, vertex) = policy.pick(&state)?;
        state.spoiler_pick(side, vertex)?;
        let forced = state.forced_response().is_some();
        match duplicator_respond(&state, &schedule, alpha)? {
            Some(answer) => {
                state.duplicator_reply(answer)?;
                transcript.push(RoundRecord {
                    round,
                    spoiler_side: side,
                    spoiler_vertex: vertex,
                    duplicator_vertex: Some(answer),
                    forced,
                });
            }
            None => {
                transcript.push(RoundRecord {
                    round,
                    spoiler_side: side,
                    spoiler_vertex: vertex,
                    duplicator_vertex: None,
                    forced,
                });
                state.resign();
                resigned = true;
            }
        }
    }
    Ok(MatchOutcome {
        state,
        transcript,
        resigned,
        schedule,
    })
}

/// Tournament over independently sampled hypergraph pairs.
#[derive(Debug, Clone, Serialize)]
pub struct TournamentReport {
    pub games: usize,
    pub duplicator_wins: usize,
    pub spoiler_wins: usize,
    pub resignations: usize,
    pub win_rate: f64,
    pub schedule: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct TournamentConfig {
    pub games: usize,
    pub arity: usize,
    /// Vertices per sampled hypergraph.
    pub n: usize,
    /// Edges per sampled hypergraph (uniform exact-count model).
    pub m: usize,
    pub rounds: usize,
    pub alpha: Exponent,
    pub policy: PolicyKind,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolicyKind {
    Random,
    GreedyDegree,
}

/// Plays `games` independent matches and aggregates outcomes. Matches run
/// in parallel; results are reduced in match order.
pub fn run_tournament(cfg: &TournamentConfig) -> Result<TournamentReport> {
    use rayon::prelude::*;
    let sampler = crate::randmodel::EdgeSampler::new(cfg.arity, cfg.n)?;
    let schedule = lookahead_schedule(cfg.rounds, &cfg.alpha)?;
    let outcomes: Vec<(Status, bool)> = (0..cfg.games as u64)
        .into_par_iter()
        .map(|game| {
            let mut rng1 = crate::randmodel::replicate_rng(cfg.seed, 10, game);
            let mut rng2 = crate::randmodel::replicate_rng(cfg.seed, 11, game);
            let g1 = sampler.sample_edge_count(cfg.m, &mut rng1)?;
            let g2 = sampler.sample_edge_count(cfg.m, &mut rng2)?;
            let outcome = match cfg.policy {
                PolicyKind::Random => {
                    let mut policy = RandomSpoiler {
                        rng: crate::randmodel::replicate_rng(cfg.seed, 12, game),
                    };
                    play_match(&g1, &g2, cfg.rounds, &mut policy, &cfg.alpha)?
                }
                PolicyKind::GreedyDegree => {
                    let mut policy = GreedyDegreeSpoiler;
                    play_match(&g1, &g2, cfg.rounds, &mut policy, &cfg.alpha)?
                }
            };
            Ok((outcome.state.status, outcome.resigned))
        })
        .collect::<Result<Vec<_>>>()?;
    let duplicator_wins = outcomes
        .iter()
        .filter(|(s, _)| *s == Status::DuplicatorWon)
        .count();
    let resignations = outcomes.iter().filter(|(_, r)| *r).count();
    Ok(TournamentReport {
        games: cfg.games,
        duplicator_wins,
        spoiler_wins: cfg.games - duplicator_wins,
        resignations,
        win_rate: duplicator_wins as f64 / cfg.games as f64,
        schedule,
    })
}
