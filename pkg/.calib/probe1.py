import time, json
from listcode.harness import SimConfig, run_point

out = {}
def probe(tag, code, crc, ebno, lmax, minf, maxt, seed=1000):
    cfg = SimConfig(code, crc, ebno_db=(ebno,), l_max=lmax, min_failures=minf,
                    max_trials=maxt, seed=seed, batch_size=2000)
    t0 = time.time()
    r = run_point(cfg, ebno)
    dt = time.time() - t0
    out[tag] = dict(trials=r.trials, correct=r.correct, undetected=r.undetected,
                    erasures=r.erasures, tfr=r.tfr, mean_list=r.mean_list,
                    wall_s=round(dt,1), us_per_trial=round(1e6*dt/r.trials,1))
    print(tag, out[tag], flush=True)

T = "tbcc-575-623-727-561-753"
# TBCC at 2.5 dB, the criterion-3 operating point, probe cheap m values
probe("tbcc-m11-2.5-L2048", T, "tbcc-dso-11", 2.5, 2048, 12, 400_000)
probe("tbcc-m8-2.5-L2048", T, "tbcc-dso-8", 2.5, 2048, 12, 400_000)
probe("tbcc-m16-2.5-L2048", T, "tbcc-dso-16", 2.5, 2048, 12, 400_000)
# TBCC at Lmax=32 for criterion 6 grid ends
probe("tbcc-m11-2.5-L32", T, "tbcc-dso-11", 2.5, 32, 12, 400_000)
probe("tbcc-m11-4.0-L32", T, "tbcc-dso-11", 4.0, 32, 12, 2_000_000)
json.dump(out, open("/root/pkg/.calib/probe1.json","w"), indent=1)
print("DONE")
