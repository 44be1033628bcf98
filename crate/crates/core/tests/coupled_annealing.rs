use aqc_hidden::anneal::{anneal_black_box, AnnealSchedule};
use aqc_hidden::builders::CoupledObjective;
use aqc_hidden::oracles::{Signal, SimonOracle};
use aqc_hidden::BitVector;
use num_traits::ToPrimitive;

#[test]
fn coupled_objective_reaches_its_floor_on_most_seeds() {
    let n = 6;
    let a = BitVector::from_integer(0b101101, n);
    let oracle = SimonOracle::new(n, &a, 11).unwrap();
    let objective = CoupledObjective::new(&oracle, 1, Signal::Indicator).unwrap();
    let schedule =
        AnnealSchedule::for_flip_bound(objective.n_vars(), objective.flip_bound().to_f64().unwrap()).unwrap();

    let mut hits = 0;
    for seed in 0..100 {
        let r = anneal_black_box(
            |bits: &[bool]| objective.energy_joint(bits).unwrap().to_f64().unwrap(),
            objective.n_vars(),
            &schedule,
            seed,
        )
        .unwrap();
        assert!(r.best_energy >= -1.0);
        if r.best_energy == -1.0 {
            let (w, y) = r.best_assignment.as_slice().split_at(n);
            let w = BitVector::from_bits(w.to_vec());
            let y = BitVector::from_bits(y.to_vec());
            assert_eq!(w.xor(&y).unwrap(), a);
            hits += 1;
        }
    }
    assert!(hits >= 90, "floor reached on {hits}/100 seeds");
}

#[test]
fn constant_callback_gives_zero() {
    let schedule = AnnealSchedule::new(20, 1.0, 0.01, 2).unwrap();
    let r = anneal_black_box(|_: &[bool]| 0.0, 5, &schedule, 3).unwrap();
    assert_eq!(r.best_energy, 0.0);
}
