use hurwitz_pel_core::Error;

/// Process exit codes. The numeric values are part of the interface.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u8)]
pub enum ExitCode {
    Success = 0,
    CorpusFailure = 1,
    Usage = 2,
    NonCompactType = 3,
    UnsupportedModulus = 4,
    NonMaximalOrder = 5,
    Unsatisfiable = 6,
    OtherError = 7,
    CorpusUnreadable = 8,
}

impl ExitCode {
    pub fn code(self) -> u8 {
        self as u8
    }
}

impl From<&Error> for ExitCode {
    fn from(err: &Error) -> Self {
        match err {
            Error::NonCompactType => ExitCode::NonCompactType,
            Error::UnsupportedModulus(_) => ExitCode::UnsupportedModulus,
            Error::NonMaximalOrder { .. } => ExitCode::NonMaximalOrder,
            Error::Unsatisfiable { .. } => ExitCode::Unsatisfiable,
            _ => ExitCode::OtherError,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes_are_stable() {
        assert_eq!(ExitCode::from(&Error::NonCompactType).code(), 3);
        assert_eq!(ExitCode::from(&Error::UnsupportedModulus(23)).code(), 4);
        assert_eq!(ExitCode::from(&Error::NonMaximalOrder { triple: vec![8, 5, 5], divisors: vec![3] }).code(), 5);
        assert_eq!(ExitCode::from(&Error::Unsatisfiable { cokernel_dim: 1 }).code(), 6);
        assert_eq!(ExitCode::from(&Error::ZeroDivision).code(), 7);
        assert_eq!(ExitCode::Usage.code(), 2);
        assert_eq!(ExitCode::CorpusUnreadable.code(), 8);
    }
}
