use orthoweb::evalfun::{instances, relation_sides, run_suite, Evaluator, RelationId};
use orthoweb::scalars::Field;

#[test]
fn every_relation_has_instances() {
    // at N = 4 every relation fits (associativity needs three positive labels, so N ≥ 3)
    for id in RelationId::ALL {
        assert!(
            !instances(*id, 4).is_empty(),
            "{id} has no instances at N=4"
        );
    }
}

#[test]
fn no_relation_holds_vacuously() {
    // each relation has an instance where both sides are nonzero matrices at N = 4, except those
    // stated as "= 0": the exterior, lollipop and Serre-sum relations
    let ev = Evaluator::new(4, Field::q());
    let zero_sided = [
        RelationId::Exterior,
        RelationId::Lollipop,
        RelationId::HigherEvenOrthSerre,
        RelationId::SerreA,
        RelationId::HigherSerreA,
    ];
    for id in RelationId::ALL.iter().filter(|id| !zero_sided.contains(id)) {
        let nonzero = instances(*id, 4)
            .iter()
            .filter_map(|p| relation_sides(*id, p, &ev))
            .any(|(l, r)| !l.is_zero() && !r.is_zero());
        assert!(nonzero, "{id} only has zero instances");
    }
}

#[test]
fn suite_output_is_deterministic() {
    let ev = Evaluator::new(3, Field::fp(5));
    let a = serde_json::to_string(&run_suite(&ev, RelationId::ALL)).unwrap();
    let b = serde_json::to_string(&run_suite(&ev, RelationId::ALL)).unwrap();
    assert_eq!(a, b);
}
