import time, json
from listcode.harness import SimConfig, run_point

out = {}
def probe(tag, code, crc, ebno, lmax, minf, maxt, seed=1000):
    cfg = SimConfig(code, crc, ebno_db=(ebno,), l_max=lmax, min_failures=minf,
                    max_trials=maxt, seed=seed, batch_size=2000)
    t0 = time.time()
    r = run_point(cfg, ebno)
    dt = time.time() - t0
    out[tag] = dict(trials=r.trials, undetected=r.undetected, erasures=r.erasures,
                    tfr=r.tfr, wall_s=round(dt,1), us=round(1e6*dt/r.trials,1))
    print(tag, out[tag], flush=True)
    json.dump(out, open("/root/pkg/.calib/probe4.json","w"), indent=1)

T = "tbcc-575-623-727-561-753"
# criterion 7: TBCC m11 L2048 curve around TFR 1e-4
probe("c7-2.3", T, "tbcc-dso-11", 2.3, 2048, 15, 300_000)
probe("c7-2.7", T, "tbcc-dso-11", 2.7, 2048, 15, 1_200_000)
probe("c7-3.0", T, "tbcc-dso-11", 3.0, 2048, 10, 2_000_000)
# criterion 6 remaining polar points at L32
for pc in ("5g-pbch-polar-m11-5g", "5g-pbch-polar-m12-bk"):
    probe(f"c6-{pc}-2.5", pc, None, 2.5, 32, 15, 200_000)
    probe(f"c6-{pc}-4.0", pc, None, 4.0, 32, 10, 1_000_000)
probe("c6-tbcc-3.0", T, "tbcc-dso-11", 3.0, 32, 15, 500_000)
probe("c6-tbcc-3.5", T, "tbcc-dso-11", 3.5, 32, 10, 1_500_000)
print("DONE")
