// SPDX-License-Identifier: MIT OR Apache-2.0
//! Runs every example so they stay in sync with the library.

#[allow(dead_code)]
mod offline_detection {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/offline_detection.rs"));
}

#[test]
fn offline_detection_runs() {
    offline_detection::run_example().expect("offline_detection example should run");
}

#[allow(dead_code)]
mod online_monitoring {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/online_monitoring.rs"));
}

#[test]
fn online_monitoring_runs() {
    online_monitoring::run_example().expect("online_monitoring example should run");
}

#[allow(dead_code)]
mod cusum_window {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/cusum_window.rs"));
}

#[test]
fn cusum_window_runs() {
    cusum_window::run_example().expect("cusum_window example should run");
}

#[allow(dead_code)]
mod accuracy_bounds {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/accuracy_bounds.rs"));
}

#[test]
fn accuracy_bounds_runs() {
    accuracy_bounds::run_example().expect("accuracy_bounds example should run");
}

#[allow(dead_code)]
mod threshold_search {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/threshold_search.rs"));
}

#[test]
fn threshold_search_runs() {
    threshold_search::run_example().expect("threshold_search example should run");
}

#[allow(dead_code)]
mod offline_simulation {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/offline_simulation.rs"));
}

#[test]
fn offline_simulation_runs() {
    offline_simulation::run_example().expect("offline_simulation example should run");
}

#[allow(dead_code)]
mod online_simulation {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/online_simulation.rs"));
}

#[test]
fn online_simulation_runs() {
    online_simulation::run_example().expect("online_simulation example should run");
}

#[allow(dead_code)]
mod privacy_mechanisms {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/privacy_mechanisms.rs"));
}

#[test]
fn privacy_mechanisms_runs() {
    privacy_mechanisms::run_example().expect("privacy_mechanisms example should run");
}
