'''
linear spring-dashpot normal law with a Coulomb-capped tangential spring

    F_n = max(kn * delta - gn * v_n, 0) n
    s  <- s projected on the tangent plane + v_t dt
    F_t = -kt s - gt v_t,  |F_t| <= mu |F_n|, s rescaled when sliding
'''
from typing import Tuple

import numpy as np

from ClumpDEM_CLI.models.contact import Contact, ContactModel


def contact_forces(normal: np.ndarray, overlap: np.ndarray, rel_vel: np.ndarray, spring: np.ndarray,
                   model: ContactModel, dt: float) -> Tuple[np.ndarray, np.ndarray]:
    '''
    force on the first body of every contact and the updated tangential springs

    rel_vel is the velocity of the first body relative to the second at the
    contact point; the second body receives the negated force
    '''
    normal = np.asarray(normal, dtype=float).reshape(-1, 3)
    rel_vel = np.asarray(rel_vel, dtype=float).reshape(-1, 3)
    spring = np.asarray(spring, dtype=float).reshape(-1, 3)
    v_n = np.einsum('ij,ij->i', rel_vel, normal)
    f_n = np.maximum(model.kn * np.asarray(overlap, dtype=float) - model.gn * v_n, 0.0)
    v_t = rel_vel - v_n[:, None] * normal
    spring = spring - np.einsum('ij,ij->i', spring, normal)[:, None] * normal + v_t * dt
    f_t = -model.kt * spring - model.gt * v_t
    magnitude = np.linalg.norm(f_t, axis=1)
    cap = model.mu * f_n
    sliding = magnitude > cap
    if np.any(sliding):
        scale = np.where(sliding, cap / np.where(magnitude > 0, magnitude, 1.0), 1.0)
        f_t = f_t * scale[:, None]
        if model.kt > 0:
            rescaled = -(f_t + model.gt * v_t) / model.kt
        else:
            rescaled = np.zeros_like(spring)
        spring = np.where(sliding[:, None], rescaled, spring)
    return f_n[:, None] * normal + f_t, spring


def contact_force(contact: Contact, model: ContactModel, rel_vel, dt: float) -> Tuple[np.ndarray, np.ndarray]:
    ''' single-contact form: (force on the first body, updated tangential spring) '''
    force, spring = contact_forces(contact.normal, np.array([contact.overlap]), rel_vel, contact.spring, model, dt)
    return force[0], spring[0]


def elastic_energy(overlap: np.ndarray, spring: np.ndarray, model: ContactModel) -> float:
    return float(0.5 * model.kn * np.sum(overlap ** 2) + 0.5 * model.kt * np.sum(spring ** 2))


class TangentialHistory:
    '''
    tangential springs of the open contacts keyed by an integer contact key;
    replacing the table with the current contacts forgets the opened ones
    '''
    def __init__(self):
        self.keys = np.zeros(0, dtype=np.int64)
        self.springs = np.zeros((0, 3))

    def __len__(self):
        return len(self.keys)

    def lookup(self, keys: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        ''' (springs, is_new) for the given keys; new contacts start with a zero spring '''
        keys = np.asarray(keys, dtype=np.int64)
        springs = np.zeros((len(keys), 3))
        if len(self.keys) == 0 or len(keys) == 0:
            return springs, np.ones(len(keys), dtype=bool)
        pos = np.minimum(np.searchsorted(self.keys, keys), len(self.keys) - 1)
        known = self.keys[pos] == keys
        springs[known] = self.springs[pos[known]]
        return springs, ~known

    def replace(self, keys: np.ndarray, springs: np.ndarray):
        keys = np.asarray(keys, dtype=np.int64)
        order = np.argsort(keys, kind='stable')
        self.keys = keys[order]
        self.springs = np.asarray(springs, dtype=float).reshape(-1, 3)[order]

    def clear(self):
        self.keys = np.zeros(0, dtype=np.int64)
        self.springs = np.zeros((0, 3))
