import time, json
from listcode.harness import SimConfig, run_point

out = {}
T = "tbcc-575-623-727-561-753"
for m in (9, 10, 11, 12, 13, 14):
    cfg = SimConfig(T, f"tbcc-dso-{m}", ebno_db=(2.5,), l_max=2048, min_failures=150,
                    max_trials=2_500_000, seed=777, batch_size=4000)
    t0 = time.time()
    r = run_point(cfg, 2.5)
    dt = time.time() - t0
    out[f"m{m}"] = dict(trials=r.trials, ue=r.undetected, era=r.erasures,
                        tfr=r.tfr, uer=r.uer, erate=r.erasure_rate,
                        wall_s=round(dt,1))
    print(f"m{m}", out[f"m{m}"], flush=True)
    json.dump(out, open("/root/pkg/.calib/probe5.json","w"), indent=1)
print("DONE")
