use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use panelkit_bench::{desk_instance, flow_interference};
use panelkit_core::pipeline::{color_graph, run_pipeline};
use panelkit_core::{
    assign_edge_sorting, assign_max_flow, build_assignment_graph, AssignAlgo, ColorAlgo, Stage,
};

fn assignment(c: &mut Criterion) {
    let mut group = c.benchmark_group("assign");
    for candidates in [50, 200] {
        let inst = desk_instance(60, candidates, 1);
        let g = build_assignment_graph(&inst, Stage::Interview);
        let (s, l) = (inst.config.panel_size, inst.config.max_load);
        group.bench_with_input(BenchmarkId::new("edge", candidates), &g, |b, g| {
            b.iter(|| assign_edge_sorting(g, s, l).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("flow", candidates), &g, |b, g| {
            b.iter(|| assign_max_flow(g, s, l).unwrap())
        });
    }
    group.finish();
}

fn coloring(c: &mut Criterion) {
    let inst = desk_instance(60, 200, 1);
    let g = flow_interference(&inst);
    let mut group = c.benchmark_group("color");
    group.sample_size(10);
    for algo in ColorAlgo::ALL {
        group.bench_function(algo.as_str(), |b| {
            b.iter(|| color_graph(&g, algo, &inst.config))
        });
    }
    group.finish();
}

fn pipeline(c: &mut Criterion) {
    let inst = desk_instance(60, 200, 1);
    let mut group = c.benchmark_group("pipeline");
    group.sample_size(10);
    for assign in AssignAlgo::ALL {
        for color in ColorAlgo::ALL {
            let id = format!("{}+{}", assign.as_str(), color.as_str());
            group.bench_function(id, |b| {
                b.iter(|| run_pipeline(&inst, assign, color, Stage::Interview).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, assignment, coloring, pipeline);
criterion_main!(benches);
