import sys, time
sys.path.insert(0, "/root/pkg/tests")
from accept_configs import (TBCC, POLAR_IDS, C6_GRID, C7_GRID,
                            c3_config, c5_config, c6_config, c7_config)
from simcache import cached_run_point

def warm(tag, cfg, ebno):
    t0 = time.time()
    r = cached_run_point(cfg, ebno)
    print(f"{tag}: trials={r.trials} ue={r.undetected} era={r.erasures} "
          f"tfr={r.tfr:.3e} wall={time.time()-t0:.0f}s", flush=True)

# criterion 3 sweep
for m in range(8, 17):
    warm(f"c3-m{m}", c3_config(m), 2.5)
# criterion 7 curve
for e in C7_GRID:
    warm(f"c7-{e}", c7_config(), e)
# criterion 5 arms
warm("c5-base", c5_config(False), 2.5)
warm("c5-rep864", c5_config(True), 2.5)
# criterion 6 grid
for code in (TBCC,) + POLAR_IDS:
    for e in C6_GRID:
        warm(f"c6-{code}-{e}", c6_config(code), e)
print("ALL WARMED", flush=True)
