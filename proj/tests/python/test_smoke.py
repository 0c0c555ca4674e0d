import math
import os
import tempfile

try:
    import qnipm
except ImportError:
    import _qnipm as qnipm


def test_feasible_run_and_verify():
    inst = qnipm.generate_centered_lp(6, 3, 1.0, 42)
    opts = qnipm.SolverOptions()
    opts.variant = qnipm.Variant.FeasibleN2
    opts.mode = qnipm.Mode.Theory
    opts.max_iters = 12
    res = qnipm.run(inst.problem, inst.central_start, opts)
    assert len(res.trace) == 12
    assert res.trace[-1].mu_after < res.mu0
    report = qnipm.verify_trace(res, inst.problem, opts)
    assert report.all_pass()
    assert report.failures() == 0
    assert len(report.entries) > 0


def test_mu_and_proximity():
    inst = qnipm.generate_centered_lp(5, 2, 2.0, 7)
    s = inst.central_start
    assert math.isclose(qnipm.mu(s), 2.0, rel_tol=1e-12)
    assert qnipm.n2_proximity(s) <= 1e-12


def test_infeasible_cold_start_converges():
    inst = qnipm.generate_solved_lp(5, 2, 11)
    opts = qnipm.SolverOptions()
    opts.variant = qnipm.Variant.InfeasibleNs
    opts.mode = qnipm.Mode.Adaptive
    opts.gamma = 0.76
    opts.beta = 1.0
    opts.sigma_min = 0.1
    opts.sigma_max = 0.5
    opts.alpha_dec = 0.4
    opts.epsilon = 1e-6
    opts.max_iters = 4000
    start = qnipm.cold_start(inst.xi, 5, 2)
    res = qnipm.run(inst.problem, start, opts)
    assert res.status == qnipm.Status.Converged


def test_instance_and_trace_round_trip():
    inst = qnipm.generate_centered_lp(4, 2, 1.0, 3)
    opts = qnipm.SolverOptions()
    opts.variant = qnipm.Variant.FeasibleN2
    opts.max_iters = 6
    res = qnipm.run(inst.problem, inst.central_start, opts)
    with tempfile.TemporaryDirectory() as d:
        ipath = os.path.join(d, "inst.json")
        tpath = os.path.join(d, "trace.tsv")
        qnipm.save_instance(ipath, inst)
        back = qnipm.load_instance(ipath)
        assert back.problem.n == 4 and back.problem.m == 2
        qnipm.save_trace(tpath, res, True)
        tr = qnipm.load_trace(tpath)
        assert len(tr.trace) == len(res.trace)
        assert tr.trace[0].alpha == res.trace[0].alpha


def test_config_error_names_condition():
    inst = qnipm.generate_centered_lp(4, 2, 1.0, 1)
    opts = qnipm.SolverOptions()
    opts.variant = qnipm.Variant.FeasibleN2
    opts.theta = 0.9
    try:
        qnipm.run(inst.problem, inst.central_start, opts)
    except qnipm.QnipmConfigError as e:
        assert "theta" in str(e)
    else:
        raise AssertionError("expected ConfigError")


def test_complexity_fit():
    exp, r2 = qnipm.complexity_fit([(4.0, 64.0), (8.0, 512.0), (16.0, 4096.0)])
    assert math.isclose(exp, 3.0, rel_tol=1e-9)
    assert math.isclose(r2, 1.0, rel_tol=1e-9)
