__title__ = 'jkronpy'
__description__ = 'Jordan-Kronecker product spectra, interlacing checks and exact counterexample certificates.'
__url__ = 'https://github.com/jkronpy/jkronpy'
__major__ = '1'
__minor__ = '0'
__patch__ = '0'
__meta_label__ = ''
__short_version__ = "{}.{}".format(__major__, __minor__)
__version__ = "{}.{}".format(__short_version__, __patch__)
if __meta_label__:
    __version__ += "-{}".format(__meta_label__)
__authors__ = ['The jkronpy developers']
__author_email__ = 'jkronpy@users.noreply.github.com'
__license__ = 'MIT'
__copyright__ = 'Copyright 2024 The jkronpy developers'
