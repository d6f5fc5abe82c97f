class EnergyReport:
    '''
    energies in J at simulated time t
    '''
    FIELDS = ['time', 'E_trans', 'E_rot', 'E_grav', 'E_elastic']

    def __init__(self, time: float, translational: float, rotational: float, gravitational: float, elastic: float):
        self.time = time # type: float
        self.translational = translational # type: float
        self.rotational = rotational # type: float
        self.gravitational = gravitational # type: float
        self.elastic = elastic # type: float

    @property
    def kinetic(self) -> float:
        return self.translational + self.rotational

    @property
    def total(self) -> float:
        return self.translational + self.rotational + self.gravitational + self.elastic

    def to_row(self) -> dict:
        return dict(zip(self.FIELDS, [
            self.time, self.translational, self.rotational, self.gravitational, self.elastic,
        ]))

    def __repr__(self):
        return (
            f'EnergyReport(t={self.time:.6g}, trans={self.translational:.6g}, rot={self.rotational:.6g}, '
            f'grav={self.gravitational:.6g}, elastic={self.elastic:.6g})'
        )
