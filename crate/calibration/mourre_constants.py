"""Strict Mourre constants of the lattice model on [0.2, 0.6] and [0.3, 0.7] in numpy."""
import numpy as np
from lap_threshold import cheb
def lattice(N, flavor='dirichlet'):
    Lp = 2*np.eye(N) - np.eye(N,k=1) - np.eye(N,k=-1)
    Dc = (np.eye(N,k=1) - np.eye(N,k=-1))/2
    if flavor=='circulant':
        Lp[0,-1]=Lp[-1,0]=-1; Dc[-1,0]=0.5; Dc[0,-1]=-0.5
    t,U = np.linalg.eigh(Lp)
    H = (U*(t/(1+t)))@U.T
    x = np.arange(N)-(N-1)/2
    P = -1j*Dc
    A = (np.diag(x)@P + P@np.diag(x))/2
    return H, A, t
def cstrict(H, A, lo, hi, Pproj=None):
    lam, V = np.linalg.eigh(H)
    sel = (lam>=lo)&(lam<=hi)
    Q = V[:,sel]
    if Pproj is not None:
        Q = Q - Pproj@Q
        # orthonormal basis of range
        u,sv,_ = np.linalg.svd(Q, full_matrices=False); Q = u[:, sv>1e-8]
    if Q.shape[1]==0: return np.inf
    Cm = 1j*(H@A - A@H)
    return np.linalg.eigvalsh(Q.conj().T@Cm@Q).min()
if __name__ == "__main__":
  for N in [64,128,256]:
    for fl in ['dirichlet','circulant']:
        H,A,t = lattice(N,fl)
        hmax = 4/5
        print(N, fl, "c_strict mid-half:", cstrict(H,A,0.2,0.6), " [0.3,0.7]:", cstrict(H,A,0.3,0.7))
