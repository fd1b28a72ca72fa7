"""Brute-force weighted resolvent scan of the multiplication model in numpy.

Usage: python3 lap_threshold.py N1,N2 L1,L2
"""
import numpy as np, sys, time
def mult_model(N, L):
    x = np.linspace(-L, L, N); h = x[1]-x[0]
    H = (2*np.eye(N) - np.eye(N,k=1) - np.eye(N,k=-1))/h**2
    a = np.sqrt(1+x**2)
    return H, a
def cheb(lo, hi, n):
    k = np.arange(n); return 0.5*(lo+hi) + 0.5*(hi-lo)*np.cos((2*k+1)*np.pi/(2*n))
def scan(N, L, s, npts=8, nz=64, frac=(0.25,0.75)):
    H, a = mult_model(N, L)
    lam, V = np.linalg.eigh(H)
    emax = lam[-1]  # use closed form upper 4/h^2 ~
    h = 2*L/(N-1); top = 4/h**2
    lo, hi = frac[0]*top, frac[1]*top
    inI = lam[(lam>=lo)&(lam<=hi)]
    spacing = (inI[-1]-inI[0])/(len(inI)-1)
    floor = 3*spacing
    etas = floor*np.geomspace(16,1,npts)
    w = a**(-s)
    G = w[:,None]*V
    xs = cheb(lo,hi,nz)
    sups=[]
    for eta in etas:
        best=0
        for xr in xs:
            d = 1/(lam-(xr+1j*eta))
            M = (G*d)@G.conj().T
            nrm = np.linalg.norm(M,2)
            best=max(best,nrm)
        sups.append(best)
    sl = np.polyfit(-np.log(etas), np.log(sups),1)[0]
    return floor, sl, sups
if __name__=="__main__":
   for N in [int(v) for v in sys.argv[1].split(',')]:
    for L in [float(v) for v in sys.argv[2].split(',')]:
      for s in [0.3,0.5,0.7]:
          t=time.time(); f, sl, sups = scan(N,L,s)
          print(N,L,s,"floor=%.4g slope=%.3f"%(f,sl), "t=%.1f"%(time.time()-t), flush=True)
