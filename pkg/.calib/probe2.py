import time, json
from listcode.harness import SimConfig, run_point

out = {}
def probe(tag, code, crc, ebno, lmax, minf, maxt, seed=1000):
    cfg = SimConfig(code, crc, ebno_db=(ebno,), l_max=lmax, min_failures=minf,
                    max_trials=maxt, seed=seed, batch_size=1000)
    t0 = time.time()
    r = run_point(cfg, ebno)
    dt = time.time() - t0
    out[tag] = dict(trials=r.trials, tfr=r.tfr, undetected=r.undetected,
                    erasures=r.erasures, mean_list=r.mean_list,
                    wall_s=round(dt,1), us_per_trial=round(1e6*dt/r.trials,1))
    print(tag, out[tag], flush=True)

# polar at Lmax=32 for criterion 6
probe("pc-m24-2.5-L32", "5g-pbch-polar-m24", None, 2.5, 32, 12, 100_000)
probe("pc-m11bk-2.5-L32", "5g-pbch-polar-m11-bk", None, 2.5, 32, 12, 100_000)
probe("pc-m24-4.0-L32", "5g-pbch-polar-m24", None, 4.0, 32, 12, 300_000)
probe("pc-m11bk-4.0-L32", "5g-pbch-polar-m11-bk", None, 4.0, 32, 12, 500_000)
json.dump(out, open("/root/pkg/.calib/probe2.json","w"), indent=1)
print("DONE")
