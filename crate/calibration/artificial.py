"""Artificial two-block example: strict, projected and H0 constants, full and reduced scans."""
import numpy as np
from lap_threshold import cheb
from mourre_constants import lattice, cstrict
N0,N1,lamb,decay=128,16,0.4,2.0
H0,A0,_=lattice(N0)
lo,hi=0.2,0.6
rng=np.random.default_rng(7)
A1=np.diag(np.arange(N1)-(N1-1)/2)+0.5*(np.eye(N1,k=1)+np.eye(N1,k=-1))
G=rng.standard_normal((N1,N1))+1j*rng.standard_normal((N1,N1))
Qg,_=np.linalg.qr(G); g=Qg+0.1*G/np.linalg.norm(G,axis=0)
al=np.array([(-1)**n*decay**(-n) for n in range(N1)])
C=sum(al[n]*np.outer(g[:,n],g[:,n].conj()) for n in range(N1))
C*=0.5*min(lamb-lo,hi-lamb)/np.linalg.norm(C,2)
H1=lamb*np.eye(N1)+C
H=np.block([[H0,np.zeros((N0,N1))],[np.zeros((N1,N0)),H1]])
A=np.block([[A0,np.zeros((N0,N1))],[np.zeros((N1,N0)),A1]])
P=np.zeros((N0+N1,N0+N1)); P[N0:,N0:]=np.eye(N1)
print("c_strict H", cstrict(H,A,lo,hi), "c_proj", cstrict(H,A,lo,hi,P), "c_H0", cstrict(H0,A0,lo,hi))
lam,V=np.linalg.eigh(H)
inI=lam[(lam>=lo)&(lam<=hi)]; sp=(inI[-1]-inI[0])/(len(inI)-1); fl=3*sp
a,U=np.linalg.eigh(A)
for s in [0.3,0.5,0.7,0.9]:
  W=(U*(1+a**2)**(-s/2))@U.conj().T
  for mode in ['full','reduced']:
    sups=[]
    etas=fl*np.geomspace(16,1,8)
    for eta in etas:
        best=0
        for xr in cheb(lo,hi,64):
            R=(V/(lam-(xr+1j*eta)))@V.conj().T
            if mode=='reduced': R=R@(np.eye(N0+N1)-P)
            best=max(best,np.linalg.norm(W@R@W,2))
        sups.append(best)
    print(s,mode,"slope %.3f"%np.polyfit(-np.log(etas),np.log(sups),1)[0], "floor",fl)
