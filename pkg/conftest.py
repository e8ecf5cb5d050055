import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'ASAI.settings')
django.setup()
