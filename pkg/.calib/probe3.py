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
                    tfr=r.tfr, mean_list=round(r.mean_list,3),
                    wall_s=round(dt,1), us=round(1e6*dt/r.trials,1))
    print(tag, out[tag], flush=True)
    json.dump(out, open("/root/pkg/.calib/probe3.json","w"), indent=1)

T = "tbcc-575-623-727-561-753"
# criterion 3 calibration: all m at 2.5 dB Lmax=2048 (reduced events)
for m in (8, 9, 10, 11, 12, 13, 14, 15, 16):
    probe(f"c3-m{m}", T, f"tbcc-dso-{m}", 2.5, 2048, 15, 300_000)
print("DONE")
