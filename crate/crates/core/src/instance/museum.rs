//! A museum-like two-floor instance.
//!
//! The layout is hand-built: 27 rooms (outside base, two entrance halls, a
//! stairway and 23 galleries) joined by two-way doorways. Survival
//! probabilities and rewards follow fixed room classes; the exact doorway
//! list of any particular building is not reproduced.
//!
//! ```text
//!  first floor                            second floor
//!
//!  L1 - L2 - L3      R1 - R2 - R3          U1 - U2 - U3
//!  |         |       |         |           |    |    |
//!  L4 - L5 - L6      R4 - R5 - R6          U4 - U5 - U6
//!                    |    |                |    |    |
//!                    B1 - B2               U7 - U8 - U9
//! ```
//!
//! `entrance_1f` joins `outside` (the base), `L1`, `R1` and the `stairway`,
//! which climbs to `entrance_2f`; that hall opens onto `U1`, `U4` and `U7`.

use super::{ArcDoc, InstanceDoc, NodeDoc, ProblemInstance};

pub const STAIRCASE: f64 = 0.8;
pub const ENTRANCE: f64 = 0.9;
pub const FIRST_FLOOR_RIGHT: f64 = 0.97;
pub const FIRST_FLOOR_LEFT: f64 = 0.95;
pub const SECOND_FLOOR: f64 = 0.9;

pub const LARGE: f64 = 2.0 / 3.0;
pub const MEDIUM: f64 = 1.0 / 3.0;
pub const SMALL: f64 = 1.0;
pub const PERIPHERAL: f64 = 1.0 / 10.0;

const NODES: &[(&str, f64)] = &[
    ("outside", 0.0),
    ("entrance_1f", 0.0),
    ("entrance_2f", 0.0),
    ("stairway", 0.0),
    // first floor, left wing; L5 and L6 sit in the bottom-left corner
    ("L1", SMALL),
    ("L2", LARGE),
    ("L3", SMALL),
    ("L4", MEDIUM),
    ("L5", PERIPHERAL),
    ("L6", PERIPHERAL),
    // first floor, right wing; R6 is a corner room
    ("R1", LARGE),
    ("R2", MEDIUM),
    ("R3", LARGE),
    ("R4", SMALL),
    ("R5", MEDIUM),
    ("R6", PERIPHERAL),
    // behind the stairway, reached from the right wing
    ("B1", PERIPHERAL),
    ("B2", PERIPHERAL),
    // second floor
    ("U1", LARGE),
    ("U2", SMALL),
    ("U3", MEDIUM),
    ("U4", LARGE),
    ("U5", SMALL),
    ("U6", MEDIUM),
    ("U7", LARGE),
    ("U8", MEDIUM),
    ("U9", SMALL),
];

const DOORWAYS: &[(&str, &str, f64)] = &[
    ("outside", "entrance_1f", ENTRANCE),
    ("entrance_1f", "L1", ENTRANCE),
    ("entrance_1f", "R1", ENTRANCE),
    ("entrance_1f", "stairway", STAIRCASE),
    ("stairway", "entrance_2f", STAIRCASE),
    ("L1", "L2", FIRST_FLOOR_LEFT),
    ("L2", "L3", FIRST_FLOOR_LEFT),
    ("L1", "L4", FIRST_FLOOR_LEFT),
    ("L3", "L6", FIRST_FLOOR_LEFT),
    ("L4", "L5", FIRST_FLOOR_LEFT),
    ("L5", "L6", FIRST_FLOOR_LEFT),
    ("R1", "R2", FIRST_FLOOR_RIGHT),
    ("R2", "R3", FIRST_FLOOR_RIGHT),
    ("R1", "R4", FIRST_FLOOR_RIGHT),
    ("R3", "R6", FIRST_FLOOR_RIGHT),
    ("R4", "R5", FIRST_FLOOR_RIGHT),
    ("R5", "R6", FIRST_FLOOR_RIGHT),
    ("R4", "B1", FIRST_FLOOR_RIGHT),
    ("B1", "B2", FIRST_FLOOR_RIGHT),
    ("B2", "R5", FIRST_FLOOR_RIGHT),
    ("entrance_2f", "U1", SECOND_FLOOR),
    ("entrance_2f", "U4", SECOND_FLOOR),
    ("entrance_2f", "U7", SECOND_FLOOR),
    ("U1", "U2", SECOND_FLOOR),
    ("U2", "U3", SECOND_FLOOR),
    ("U4", "U5", SECOND_FLOOR),
    ("U5", "U6", SECOND_FLOOR),
    ("U7", "U8", SECOND_FLOOR),
    ("U8", "U9", SECOND_FLOOR),
    ("U1", "U4", SECOND_FLOOR),
    ("U4", "U7", SECOND_FLOOR),
    ("U2", "U5", SECOND_FLOOR),
    ("U5", "U8", SECOND_FLOOR),
    ("U3", "U6", SECOND_FLOOR),
    ("U6", "U9", SECOND_FLOOR),
];

pub const MUSEUM_ROBOTS: usize = 3;

/// Builds the museum-like instance with a team of three robots.
pub fn build_museum_instance() -> ProblemInstance {
    let nodes = NODES
        .iter()
        .map(|&(id, reward)| NodeDoc {
            id: id.to_string(),
            reward,
        })
        .collect();
    let mut arcs: Vec<ArcDoc> = DOORWAYS
        .iter()
        .flat_map(|&(a, b, survival)| {
            [(a, b), (b, a)].map(|(from, to)| ArcDoc {
                from: from.to_string(),
                to: to.to_string(),
                survival,
            })
        })
        .collect();
    arcs.push(ArcDoc {
        from: "outside".into(),
        to: "outside".into(),
        survival: 1.0,
    });
    let doc = InstanceDoc {
        base: "outside".into(),
        num_robots: MUSEUM_ROBOTS,
        nodes,
        arcs,
    };
    ProblemInstance::from_doc(doc).expect("museum layout is a valid instance")
}
