import sys, time
sys.path.insert(0, "/root/pkg/tests")
from accept_configs import c4_config
from simcache import cached_run_point

t0 = time.time()
cfg = c4_config()
r = cached_run_point(cfg, 3.5)
print(f"C4 done: trials={r.trials} ue={r.undetected} era={r.erasures} "
      f"tfr={r.tfr:.3e} wall={time.time()-t0:.0f}s", flush=True)
