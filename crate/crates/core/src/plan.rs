//! Vehicle plans: action sequences, feasibility checks, and cost accounting.
//!
//! Plan files hold one action per line, with 1-based request indices:
//!
//! ```text
//! P <i>
//! D <i>
//! M <x_1> ... <x_d>
//! ```
//!
//! In memory, request indices are 0-based everywhere; the file layer does
//! the shifting.

use std::io::{BufRead, BufReader, BufWriter, Read, Write};

use crate::error::{Error, Result};
use crate::geom::{dist, Point};
use crate::instance::Instance;
use crate::scalar::Scalar;

/// One step of a vehicle plan.
#[derive(Debug, Clone, PartialEq)]
pub enum Action<S> {
    /// Pick up request `i` at its origin.
    Pickup(usize),
    /// Deliver request `i` at its destination.
    Deliver(usize),
    /// Drive to `point` carrying nothing.
    MoveEmpty(Point<S>),
}

/// An ordered action sequence executed by a single vehicle of fixed capacity.
#[derive(Debug, Clone, PartialEq)]
pub struct Plan<S> {
    pub actions: Vec<Action<S>>,
    pub capacity: usize,
}

impl<S: Scalar> Plan<S> {
    pub fn new(actions: Vec<Action<S>>, capacity: usize) -> Self {
        Plan { actions, capacity }
    }

    /// Location the vehicle occupies after performing `action`.
    fn action_location<'a>(&'a self, inst: &'a Instance<S>, action: &'a Action<S>) -> &'a Point<S> {
        match action {
            Action::Pickup(i) => &inst.request(*i).origin,
            Action::Deliver(i) => &inst.request(*i).destination,
            Action::MoveEmpty(p) => p,
        }
    }
}

/// Which legs count toward the objective.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CostMode {
    /// Total distance traveled.
    Pdp,
    /// Only distance traveled while carrying at least one object.
    PdpC,
}

/// Distance actually driven, split by whether the vehicle was carrying
/// anything when the leg started.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostBreakdown<S> {
    pub loaded: S,
    pub empty: S,
    pub total: S,
}

impl<S: Scalar> CostBreakdown<S> {
    fn new(loaded: S, empty: S) -> Self {
        CostBreakdown {
            loaded,
            empty,
            total: loaded + empty,
        }
    }

    pub fn objective(&self, mode: CostMode) -> S {
        match mode {
            CostMode::Pdp => self.total,
            CostMode::PdpC => self.loaded,
        }
    }
}

/// A feasibility rule broken by a plan. `step` is the 0-based position of
/// the offending action; requests are reported 1-based in messages.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DoublePickup { request: usize, step: usize },
    DeliverBeforePickup { request: usize, step: usize },
    MissingDelivery { request: usize },
    CapacityExceeded { capacity: usize, step: usize },
    MoveEmptyWhileLoaded { step: usize },
    IndexOutOfRange { index: usize, step: usize },
    MoveEmptyDimension { got: usize, want: usize, step: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::DoublePickup { request, step } => {
                write!(f, "request {} picked up again at step {}", request + 1, step + 1)
            }
            Violation::DeliverBeforePickup { request, step } => write!(
                f,
                "request {} delivered at step {} while not on board",
                request + 1,
                step + 1
            ),
            Violation::MissingDelivery { request } => {
                write!(f, "request {} never delivered", request + 1)
            }
            Violation::CapacityExceeded { capacity, step } => {
                write!(f, "capacity {capacity} exceeded at step {}", step + 1)
            }
            Violation::MoveEmptyWhileLoaded { step } => {
                write!(f, "move-empty at step {} while carrying objects", step + 1)
            }
            Violation::IndexOutOfRange { index, step } => {
                write!(f, "request index {} out of range at step {}", index + 1, step + 1)
            }
            Violation::MoveEmptyDimension { got, want, step } => write!(
                f,
                "move-empty point has dimension {got}, instance has {want} (step {})",
                step + 1
            ),
        }
    }
}

/// Result of checking a plan against an instance.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks pickup/delivery pairing, precedence, capacity, and the
/// empty-move rule. All violations are collected, none abort the walk.
pub fn validate_plan<S: Scalar>(inst: &Instance<S>, plan: &Plan<S>) -> ValidationReport {
    let n = inst.n();
    let mut picked = vec![false; n];
    let mut delivered = vec![false; n];
    let mut onboard = 0usize;
    let mut violations = Vec::new();

    for (step, action) in plan.actions.iter().enumerate() {
        match action {
            Action::Pickup(i) => {
                if *i >= n {
                    violations.push(Violation::IndexOutOfRange { index: *i, step });
                    continue;
                }
                if picked[*i] {
                    violations.push(Violation::DoublePickup { request: *i, step });
                    continue;
                }
                picked[*i] = true;
                onboard += 1;
                if onboard > plan.capacity {
                    violations.push(Violation::CapacityExceeded {
                        capacity: plan.capacity,
                        step,
                    });
                }
            }
            Action::Deliver(i) => {
                if *i >= n {
                    violations.push(Violation::IndexOutOfRange { index: *i, step });
                    continue;
                }
                if !picked[*i] || delivered[*i] {
                    violations.push(Violation::DeliverBeforePickup { request: *i, step });
                    continue;
                }
                delivered[*i] = true;
                onboard -= 1;
            }
            Action::MoveEmpty(p) => {
                if onboard > 0 {
                    violations.push(Violation::MoveEmptyWhileLoaded { step });
                }
                if p.dim() != inst.dim() {
                    violations.push(Violation::MoveEmptyDimension {
                        got: p.dim(),
                        want: inst.dim(),
                        step,
                    });
                }
            }
        }
    }
    for i in 0..n {
        if !delivered[i] {
            violations.push(Violation::MissingDelivery { request: i });
        }
    }
    ValidationReport { violations }
}

/// True iff every delivery pops the most recently picked-up object still on
/// board (stack discipline within each shared leg).
pub fn is_lifo<S: Scalar>(plan: &Plan<S>) -> bool {
    let mut stack: Vec<usize> = Vec::new();
    for action in &plan.actions {
        match action {
            Action::Pickup(i) => stack.push(*i),
            Action::Deliver(i) => {
                if stack.pop() != Some(*i) {
                    return false;
                }
            }
            Action::MoveEmpty(_) => {}
        }
    }
    true
}

/// Walks the plan and accumulates leg lengths. A leg counts as loaded when
/// the vehicle carries at least one object at departure. With
/// `include_depot_leg`, an initial empty leg from the depot to the first
/// action is added. Invalid plans are rejected with their first violation.
pub fn plan_cost<S: Scalar>(
    inst: &Instance<S>,
    plan: &Plan<S>,
    include_depot_leg: bool,
) -> Result<CostBreakdown<S>> {
    let report = validate_plan(inst, plan);
    if let Some(v) = report.violations.first() {
        return Err(Error::InvalidPlan(v.clone()));
    }
    if plan.actions.is_empty() {
        return Ok(CostBreakdown::new(S::zero(), S::zero()));
    }

    let mut loaded = S::zero();
    let mut empty = S::zero();
    if include_depot_leg {
        empty += dist(inst.depot(), plan.action_location(inst, &plan.actions[0]));
    }

    let mut onboard = 0usize;
    let mut here = plan.action_location(inst, &plan.actions[0]);
    for action in &plan.actions {
        let there = plan.action_location(inst, action);
        let leg = dist(here, there);
        if onboard > 0 {
            loaded += leg;
        } else {
            empty += leg;
        }
        match action {
            Action::Pickup(_) => onboard += 1,
            Action::Deliver(_) => onboard -= 1,
            Action::MoveEmpty(_) => {}
        }
        here = there;
    }
    Ok(CostBreakdown::new(loaded, empty))
}

pub fn write_plan<S: Scalar, W: Write>(plan: &Plan<S>, w: W) -> Result<()> {
    let mut w = BufWriter::new(w);
    for action in &plan.actions {
        match action {
            Action::Pickup(i) => writeln!(w, "P {}", i + 1)?,
            Action::Deliver(i) => writeln!(w, "D {}", i + 1)?,
            Action::MoveEmpty(p) => {
                let coords: Vec<String> = p.coords().iter().map(|x| format!("{x}")).collect();
                writeln!(w, "M {}", coords.join(" "))?
            }
        }
    }
    w.flush()?;
    Ok(())
}

pub fn read_actions<S: Scalar, R: Read>(r: R, path: &str) -> Result<Vec<Action<S>>> {
    let r = BufReader::new(r);
    let parse_err = |line: usize, msg: String| Error::Parse {
        path: path.to_string(),
        line,
        msg,
    };
    let mut actions = Vec::new();
    for (idx, line) in r.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut toks = line.split_whitespace();
        let kind = toks.next().unwrap();
        match kind {
            "P" | "D" => {
                let i: usize = toks
                    .next()
                    .ok_or_else(|| parse_err(lineno, "missing request index".into()))?
                    .parse()
                    .map_err(|e| parse_err(lineno, format!("bad index: {e}")))?;
                if i == 0 {
                    return Err(parse_err(lineno, "request indices are 1-based".into()));
                }
                if toks.next().is_some() {
                    return Err(parse_err(lineno, "trailing fields after index".into()));
                }
                actions.push(if kind == "P" {
                    Action::Pickup(i - 1)
                } else {
                    Action::Deliver(i - 1)
                });
            }
            "M" => {
                let mut coords = Vec::new();
                for t in toks {
                    let v: f64 = t
                        .parse()
                        .map_err(|e| parse_err(lineno, format!("bad coordinate '{t}': {e}")))?;
                    coords.push(S::from_f64_lossy(v));
                }
                if coords.is_empty() {
                    return Err(parse_err(lineno, "move-empty needs coordinates".into()));
                }
                actions.push(Action::MoveEmpty(Point::new(coords)));
            }
            other => {
                return Err(parse_err(lineno, format!("unknown action '{other}'")));
            }
        }
    }
    Ok(actions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Request;

    fn req1(s: f64, t: f64) -> Request<f64> {
        Request::new(Point::new(vec![s]), Point::new(vec![t])).unwrap()
    }

    /// d=1, r1=(0,1), r2=(1,0).
    fn instance_a() -> Instance<f64> {
        Instance::new(1, vec![req1(0.0, 1.0), req1(1.0, 0.0)]).unwrap()
    }

    #[test]
    fn shared_plan_on_instance_a_costs_three_loaded() {
        let inst = instance_a();
        let plan = Plan::new(
            vec![
                Action::Pickup(0),
                Action::Pickup(1),
                Action::Deliver(1),
                Action::Deliver(0),
            ],
            2,
        );
        let cost = plan_cost(&inst, &plan, false).unwrap();
        assert_eq!(cost.loaded, 3.0);
        assert_eq!(cost.empty, 0.0);
        assert_eq!(cost.objective(CostMode::PdpC), 3.0);
    }

    #[test]
    fn sequential_plan_with_depot_leg_costs_two_total() {
        let inst = instance_a();
        let plan = Plan::new(
            vec![
                Action::Pickup(0),
                Action::Deliver(0),
                Action::Pickup(1),
                Action::Deliver(1),
            ],
            1,
        );
        let cost = plan_cost(&inst, &plan, true).unwrap();
        assert_eq!(cost.objective(CostMode::Pdp), 2.0);
        assert_eq!(cost.empty, 0.0); // depot leg has length 0 here
    }

    #[test]
    fn zero_length_request_has_zero_loaded_cost() {
        let inst = Instance::new(1, vec![req1(0.4, 0.4)]).unwrap();
        let plan = Plan::new(vec![Action::Pickup(0), Action::Deliver(0)], 1);
        let cost = plan_cost(&inst, &plan, false).unwrap();
        assert_eq!(cost.objective(CostMode::PdpC), 0.0);
    }

    #[test]
    fn pdpc_objective_never_exceeds_pdp_objective() {
        let inst = instance_a();
        let plan = Plan::new(
            vec![
                Action::Pickup(0),
                Action::Deliver(0),
                Action::MoveEmpty(Point::new(vec![0.5])),
                Action::Pickup(1),
                Action::Deliver(1),
            ],
            1,
        );
        let cost = plan_cost(&inst, &plan, false).unwrap();
        assert!(cost.objective(CostMode::PdpC) <= cost.objective(CostMode::Pdp));
        assert_eq!(cost.total, cost.loaded + cost.empty);
    }

    #[test]
    fn validate_accepts_simple_plan() {
        let inst = Instance::new(1, vec![req1(0.1, 0.9)]).unwrap();
        let plan = Plan::new(vec![Action::Pickup(0), Action::Deliver(0)], 1);
        assert!(validate_plan(&inst, &plan).is_ok());
    }

    #[test]
    fn validate_rejects_deliver_before_pickup() {
        let inst = Instance::new(1, vec![req1(0.1, 0.9)]).unwrap();
        let plan = Plan::new(vec![Action::Deliver(0), Action::Pickup(0)], 1);
        let report = validate_plan(&inst, &plan);
        assert!(report
            .violations
            .contains(&Violation::DeliverBeforePickup { request: 0, step: 0 }));
    }

    #[test]
    fn validate_rejects_capacity_overflow() {
        let inst = instance_a();
        let plan = Plan::new(
            vec![
                Action::Pickup(0),
                Action::Pickup(1),
                Action::Deliver(1),
                Action::Deliver(0),
            ],
            1,
        );
        let report = validate_plan(&inst, &plan);
        assert!(report
            .violations
            .contains(&Violation::CapacityExceeded { capacity: 1, step: 1 }));
    }

    #[test]
    fn validate_flags_double_pickup_missing_delivery_and_loaded_move() {
        let inst = instance_a();
        let plan = Plan::new(
            vec![
                Action::Pickup(0),
                Action::Pickup(0),
                Action::MoveEmpty(Point::new(vec![0.5])),
            ],
            2,
        );
        let report = validate_plan(&inst, &plan);
        assert!(report
            .violations
            .contains(&Violation::DoublePickup { request: 0, step: 1 }));
        assert!(report
            .violations
            .contains(&Violation::MoveEmptyWhileLoaded { step: 2 }));
        assert!(report
            .violations
            .contains(&Violation::MissingDelivery { request: 0 }));
        assert!(report
            .violations
            .contains(&Violation::MissingDelivery { request: 1 }));
    }

    #[test]
    fn lifo_checks() {
        let mk = |actions: Vec<Action<f64>>| Plan::new(actions, 2);
        assert!(is_lifo(&mk(vec![
            Action::Pickup(0),
            Action::Pickup(1),
            Action::Deliver(1),
            Action::Deliver(0),
        ])));
        assert!(!is_lifo(&mk(vec![
            Action::Pickup(0),
            Action::Pickup(1),
            Action::Deliver(0),
            Action::Deliver(1),
        ])));
        // singleton groups are vacuously LIFO
        assert!(is_lifo(&mk(vec![
            Action::Pickup(0),
            Action::Deliver(0),
            Action::Pickup(1),
            Action::Deliver(1),
        ])));
    }

    #[test]
    fn plan_file_round_trip() {
        let plan: Plan<f64> = Plan::new(
            vec![
                Action::Pickup(0),
                Action::MoveEmpty(Point::new(vec![0.25, 0.75])),
                Action::Deliver(0),
            ],
            1,
        );
        let mut buf = Vec::new();
        write_plan(&plan, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("P 1\n"));
        let actions: Vec<Action<f64>> = read_actions(&buf[..], "mem").unwrap();
        assert_eq!(actions, plan.actions);
    }

    #[test]
    fn invalid_plan_cost_reports_first_violation() {
        let inst = instance_a();
        let plan = Plan::new(vec![Action::Pickup(7)], 1);
        match plan_cost(&inst, &plan, false) {
            Err(Error::InvalidPlan(Violation::IndexOutOfRange { index: 7, step: 0 })) => {}
            other => panic!("unexpected: {other:?}"),
        }
    }
}
