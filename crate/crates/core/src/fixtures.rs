//! Small named instances used by tests, the CLI and the acceptance suite.

use crate::actions::{GlobalAction, PartialAction};
use crate::groups::FinGroup;
use crate::topology::FinSpace;

/// `Z2` on the discrete space `{a, b, c}` with `X_1 = {a, b}` and `θ_1`
/// swapping `a` and `b`.
pub fn swap() -> PartialAction {
    PartialAction::from_labels(
        FinGroup::cyclic(2).expect("n >= 1"),
        FinSpace::discrete(&["a", "b", "c"]).expect("nonempty"),
        &[("1", &["a", "b"])],
        &[("1", &[("a", "b"), ("b", "a")])],
    )
    .expect("swap fixture is well formed")
}

/// `Z4` on the Khalimsky circle with 12 points: `X_1 = {9,10,11}`,
/// `X_3 = {3,4,5}` exchanged by rotation through 6, and `X_2 = {1,7}` fixed.
pub fn kh12() -> PartialAction {
    PartialAction::from_labels(
        FinGroup::cyclic(4).expect("n >= 1"),
        FinSpace::khalimsky_circle(12).expect("even n >= 4"),
        &[("1", &["9", "10", "11"]), ("3", &["3", "4", "5"]), ("2", &["1", "7"])],
        &[
            ("1", &[("3", "9"), ("4", "10"), ("5", "11")]),
            ("3", &[("9", "3"), ("10", "4"), ("11", "5")]),
            ("2", &[("1", "1"), ("7", "7")]),
        ],
    )
    .expect("kh12 fixture is well formed")
}

/// `Z2` on the Sierpinski space with `X_1 = {1}` and `θ_1` the identity.
pub fn sierpinski() -> PartialAction {
    PartialAction::from_labels(
        FinGroup::cyclic(2).expect("n >= 1"),
        FinSpace::sierpinski(),
        &[("1", &["1"])],
        &[("1", &[("1", "1")])],
    )
    .expect("sierpinski fixture is well formed")
}

/// The trivial group on `{x, y, z}` with `U_x = {x}`, `U_y = {x, y}`,
/// `U_z = {z}`.
pub fn trivial() -> PartialAction {
    let space = FinSpace::from_labels(
        &["x", "y", "z"],
        &[("x", &["x"]), ("y", &["x", "y"]), ("z", &["z"])],
    )
    .expect("valid basis");
    GlobalAction::trivial(FinGroup::trivial(), space).to_partial()
}

/// `Z2` swapping the two points of the discrete space `{a, b}`.
pub fn swap2_global_action() -> GlobalAction {
    GlobalAction::from_labels(
        FinGroup::cyclic(2).expect("n >= 1"),
        FinSpace::discrete(&["a", "b"]).expect("nonempty"),
        &[("1", &[("a", "b"), ("b", "a")])],
    )
    .expect("swap is an action")
}

pub fn swap2_global() -> PartialAction {
    swap2_global_action().to_partial()
}

/// Every named fixture.
pub fn all() -> Vec<(&'static str, PartialAction)> {
    vec![
        ("trivial", trivial()),
        ("swap", swap()),
        ("kh12", kh12()),
        ("sierpinski", sierpinski()),
        ("swap2-global", swap2_global()),
    ]
}
